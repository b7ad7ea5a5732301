#include "pnm.hpp"

#include <cmath>
#include <fstream>

namespace alseg {
namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in, const std::string& path) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    if (tok.empty()) throw IngestError("pnm: truncated header in " + path);
    return tok;
}

int parse_int(const std::string& tok, const std::string& path) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw IngestError("pnm: bad header value '" + tok + "' in " + path);
    }
}

struct PnmHeader {
    std::string magic;
    int width = 0;
    int height = 0;
    int maxval = 0;
};

PnmHeader read_header(std::istream& in, const std::string& path) {
    PnmHeader h;
    h.magic = next_token(in, path);
    if (h.magic != "P5" && h.magic != "P6")
        throw IngestError("pnm: unsupported magic '" + h.magic + "' in " + path +
                          " (only binary P5/P6 supported)");
    h.width = parse_int(next_token(in, path), path);
    h.height = parse_int(next_token(in, path), path);
    h.maxval = parse_int(next_token(in, path), path);
    if (h.width < 1 || h.height < 1)
        throw IngestError("pnm: bad dimensions in " + path);
    if (h.maxval != 255)
        throw IngestError("pnm: unsupported maxval " + std::to_string(h.maxval) +
                          " in " + path + " (expected 255)");
    return h;
}

std::vector<std::uint8_t> read_raster(std::istream& in, std::size_t n,
                                      const std::string& path) {
    std::vector<std::uint8_t> data(n);
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n)
        throw IngestError("pnm: truncated raster in " + path);
    return data;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError("pnm: cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("pnm: cannot write " + path);
    return out;
}

std::uint8_t to_byte(double v) {
    double c = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    return static_cast<std::uint8_t>(std::lround(c * 255.0));
}

}  // namespace

ImageTensor read_pnm_image(const std::string& path) {
    auto in = open_in(path);
    PnmHeader h = read_header(in, path);
    int channels = h.magic == "P6" ? 3 : 1;
    std::size_t px = static_cast<std::size_t>(h.width) * h.height;
    auto raster = read_raster(in, px * channels, path);

    ImageTensor img(h.height, h.width, channels);
    // Raster is pixel-interleaved; ImageTensor is planar.
    for (std::size_t i = 0; i < px; ++i)
        for (int c = 0; c < channels; ++c)
            img.values[static_cast<std::size_t>(c) * px + i] =
                raster[i * channels + c] / 255.0;
    return img;
}

void write_pnm_image(const std::string& path, const ImageTensor& img) {
    img.validate_shape();
    auto out = open_out(path);
    out << (img.channels == 3 ? "P6" : "P5") << "\n"
        << img.width << " " << img.height << "\n255\n";
    std::size_t px = img.pixel_count();
    std::vector<std::uint8_t> raster(px * img.channels);
    for (std::size_t i = 0; i < px; ++i)
        for (int c = 0; c < img.channels; ++c)
            raster[i * img.channels + c] =
                to_byte(img.values[static_cast<std::size_t>(c) * px + i]);
    out.write(reinterpret_cast<const char*>(raster.data()),
              static_cast<std::streamsize>(raster.size()));
    if (!out) throw IoError("pnm: write failed for " + path);
}

BinaryMask read_pgm_mask(const std::string& path) {
    auto in = open_in(path);
    PnmHeader h = read_header(in, path);
    if (h.magic != "P5")
        throw IngestError("pnm: mask must be PGM (P5): " + path);
    auto raster = read_raster(in, static_cast<std::size_t>(h.width) * h.height, path);
    BinaryMask mask(h.height, h.width);
    for (std::size_t i = 0; i < raster.size(); ++i)
        mask.bits[i] = raster[i] >= 128 ? 1 : 0;
    return mask;
}

void write_pgm_mask(const std::string& path, const BinaryMask& mask) {
    auto out = open_out(path);
    out << "P5\n" << mask.width << " " << mask.height << "\n255\n";
    std::vector<std::uint8_t> raster(mask.bits.size());
    for (std::size_t i = 0; i < raster.size(); ++i)
        raster[i] = mask.bits[i] ? 255 : 0;
    out.write(reinterpret_cast<const char*>(raster.data()),
              static_cast<std::streamsize>(raster.size()));
    if (!out) throw IoError("pnm: write failed for " + path);
}

}  // namespace alseg
