#include "synthetic.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "common.hpp"
#include "oracle.hpp"
#include "pnm.hpp"
#include "rng.hpp"

namespace fs = std::filesystem;

namespace alseg {

void SyntheticConfig::validate() const {
    if (classes < 2) throw ConfigError("synthetic: classes must be >= 2");
    if (height < 16 || width < 16) throw ConfigError("synthetic: image size must be >= 16");
    if (channels != 1 && channels != 3) throw ConfigError("synthetic: channels must be 1 or 3");
    if (modes_per_class < 1) throw ConfigError("synthetic: modes_per_class must be >= 1");
    if (noise_std < 0) throw ConfigError("synthetic: noise_std must be >= 0");
    if (color_jitter < 0) throw ConfigError("synthetic: color_jitter must be >= 0");
    if (blob_min < 1 || blob_max < blob_min) throw ConfigError("synthetic: bad blob_count range");
    if (train_per_class < 1 || test_per_class < 1 || valid_per_class < 0)
        throw ConfigError("synthetic: per-class sample counts must be positive");
    if (!(fg_min > 0 && fg_max < 1 && fg_min < fg_max))
        throw ConfigError("synthetic: foreground band must satisfy 0 < fg_min < fg_max < 1");
}

ModePalette mode_palette(const SyntheticConfig& cfg, int class_label, int mode) {
    int total = cfg.classes * cfg.modes_per_class;
    int t = class_label * cfg.modes_per_class + mode;
    double denom = total > 1 ? static_cast<double>(total - 1) : 1.0;

    ModePalette p{};
    for (int ch = 0; ch < 3; ++ch) {
        // Each channel walks the sub-modes in a rotated order, so no single
        // intensity threshold separates foreground from background across
        // all modes, but a combination of channels can.
        int tc = (t + ch) % total;
        double u = static_cast<double>(tc) / denom;
        p.bg[ch] = 0.15 + 0.40 * u;
        p.fg[ch] = 0.85 - 0.40 * u;
    }
    return p;
}

namespace {

struct Ellipse {
    double cx, cy, a, b, cos_t, sin_t;
    bool contains(double x, double y) const {
        double dx = x - cx, dy = y - cy;
        double u = (dx * cos_t + dy * sin_t) / a;
        double v = (-dx * sin_t + dy * cos_t) / b;
        return u * u + v * v <= 1.0;
    }
};

BinaryMask draw_blobs(const SyntheticConfig& cfg, Rng& rng) {
    const double scale = std::min(cfg.height, cfg.width);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        int blobs = cfg.blob_min +
                    static_cast<int>(rng.below(static_cast<std::uint64_t>(
                        cfg.blob_max - cfg.blob_min + 1)));
        std::vector<Ellipse> shapes;
        shapes.reserve(static_cast<std::size_t>(blobs));
        for (int i = 0; i < blobs; ++i) {
            Ellipse e{};
            e.cx = rng.uniform(0.15, 0.85) * cfg.width;
            e.cy = rng.uniform(0.15, 0.85) * cfg.height;
            e.a = rng.uniform(0.10, 0.30) * scale;
            e.b = rng.uniform(0.10, 0.30) * scale;
            double theta = rng.uniform(0.0, 3.14159265358979323846);
            e.cos_t = std::cos(theta);
            e.sin_t = std::sin(theta);
            shapes.push_back(e);
        }
        BinaryMask mask(cfg.height, cfg.width);
        std::size_t fg = 0;
        for (int y = 0; y < cfg.height; ++y)
            for (int x = 0; x < cfg.width; ++x)
                for (const auto& e : shapes)
                    if (e.contains(x + 0.5, y + 0.5)) {
                        mask.set(y, x, true);
                        ++fg;
                        break;
                    }
        double frac = static_cast<double>(fg) / mask.pixel_count();
        if (frac >= cfg.fg_min && frac <= cfg.fg_max) return mask;
    }
    throw ConfigError("synthetic: could not satisfy foreground band [" +
                      std::to_string(cfg.fg_min) + ", " + std::to_string(cfg.fg_max) +
                      "] after 1000 attempts; widen the band or adjust blob_count");
}

Sample make_sample(const SyntheticConfig& cfg, int id, int class_label,
                   std::uint64_t sample_seed) {
    Rng rng(sample_seed);
    int mode = static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.modes_per_class)));
    ModePalette pal = mode_palette(cfg, class_label, mode);

    double shift[3];
    for (int ch = 0; ch < 3; ++ch)
        shift[ch] = rng.uniform(-cfg.color_jitter, cfg.color_jitter);

    BinaryMask mask = draw_blobs(cfg, rng);

    ImageTensor img(cfg.height, cfg.width, cfg.channels);
    for (int ch = 0; ch < cfg.channels; ++ch)
        for (int y = 0; y < cfg.height; ++y)
            for (int x = 0; x < cfg.width; ++x) {
                double base = (mask.at(y, x) ? pal.fg[ch] : pal.bg[ch]) + shift[ch];
                double v = base + (cfg.noise_std > 0 ? rng.gaussian(cfg.noise_std) : 0.0);
                v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
                // Quantize to the 8-bit grid so disk round trips are exact.
                img.at(ch, y, x) = std::lround(v * 255.0) / 255.0;
            }
    return Sample(id, std::move(img), class_label, std::move(mask));
}

}  // namespace

Dataset generate_synthetic(const SyntheticConfig& cfg) {
    cfg.validate();
    Dataset ds;
    ds.num_classes = cfg.classes;

    struct SplitSpec {
        Split split;
        int per_class;
        std::vector<int>* ids;
    };
    SplitSpec specs[] = {{Split::Train, cfg.train_per_class, &ds.train_ids},
                         {Split::Valid, cfg.valid_per_class, &ds.valid_ids},
                         {Split::Test, cfg.test_per_class, &ds.test_ids}};

    int id = 0;
    for (std::size_t s = 0; s < 3; ++s) {
        for (int c = 0; c < cfg.classes; ++c)
            for (int i = 0; i < specs[s].per_class; ++i) {
                std::uint64_t sseed = derive_seed(
                    cfg.seed, seed_tag::synth_sample,
                    (static_cast<std::uint64_t>(s) << 32) | static_cast<std::uint64_t>(c),
                    static_cast<std::uint64_t>(i));
                ds.samples.push_back(make_sample(cfg, id, c, sseed));
                specs[s].ids->push_back(id);
                ++id;
            }
    }
    return ds;
}

void write_dataset(const Dataset& dataset, const std::string& dir,
                   const SyntheticConfig& cfg) {
    fs::path root(dir);
    std::error_code ec;
    fs::create_directories(root / "images", ec);
    fs::create_directories(root / "masks", ec);
    if (ec) throw IoError("write_dataset: cannot create " + dir + ": " + ec.message());

    auto split_of = [&](int id) {
        for (int t : dataset.valid_ids)
            if (t == id) return std::string("valid");
        for (int t : dataset.test_ids)
            if (t == id) return std::string("test");
        return std::string("train");
    };

    std::ofstream manifest(root / "manifest.csv");
    if (!manifest) throw IoError("write_dataset: cannot write manifest under " + dir);
    manifest << "image,mask,label,split\n";

    // Materializing the dataset is the one place ground truth leaves the
    // process, and it goes through the oracle.
    OracleSimulator oracle(dataset);

    char name[64];
    const char* ext = cfg.channels == 3 ? "ppm" : "pgm";
    for (const auto& s : dataset.samples) {
        std::snprintf(name, sizeof(name), "images/img_%04d.%s", s.id, ext);
        std::string img_rel = name;
        std::snprintf(name, sizeof(name), "masks/mask_%04d.pgm", s.id);
        std::string mask_rel = name;
        write_pnm_image((root / img_rel).string(), s.image);
        write_pgm_mask((root / mask_rel).string(), oracle.annotate(s.id));
        manifest << img_rel << "," << mask_rel << "," << s.class_label << ","
                 << split_of(s.id) << "\n";
    }

    std::ofstream config(root / "config.txt");
    config << "classes = " << cfg.classes << "\n"
           << "train_per_class = " << cfg.train_per_class << "\n"
           << "valid_per_class = " << cfg.valid_per_class << "\n"
           << "test_per_class = " << cfg.test_per_class << "\n"
           << "height = " << cfg.height << "\n"
           << "width = " << cfg.width << "\n"
           << "channels = " << cfg.channels << "\n"
           << "modes_per_class = " << cfg.modes_per_class << "\n"
           << "blob_min = " << cfg.blob_min << "\n"
           << "blob_max = " << cfg.blob_max << "\n"
           << "noise_std = " << cfg.noise_std << "\n"
           << "color_jitter = " << cfg.color_jitter << "\n"
           << "fg_min = " << cfg.fg_min << "\n"
           << "fg_max = " << cfg.fg_max << "\n"
           << "seed = " << cfg.seed << "\n";
}

}  // namespace alseg
