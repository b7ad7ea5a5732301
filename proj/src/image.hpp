#pragma once

#include <cstdint>
#include <vector>

#include "common.hpp"

namespace alseg {

// Planar image, values normalized to [0,1]. Plane-major layout:
// value(c, y, x) = values[c*H*W + y*W + x].
struct ImageTensor {
    int height = 0;
    int width = 0;
    int channels = 0;  // 1 or 3
    std::vector<double> values;

    ImageTensor() = default;
    ImageTensor(int h, int w, int c, double fill = 0.0)
        : height(h), width(w), channels(c),
          values(static_cast<std::size_t>(h) * w * c, fill) {
        validate_shape();
    }

    void validate_shape() const {
        if (height < 1 || width < 1 || (channels != 1 && channels != 3))
            throw DomainError("ImageTensor: invalid shape " + shape_str());
    }

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(height) * width;
    }

    double at(int c, int y, int x) const {
        return values[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
    double& at(int c, int y, int x) {
        return values[(static_cast<std::size_t>(c) * height + y) * width + x];
    }

    std::string shape_str() const {
        return std::to_string(height) + "x" + std::to_string(width) + "x" +
               std::to_string(channels);
    }
};

// Per-pixel foreground flag. Same row-major layout as one image plane.
struct BinaryMask {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> bits;

    BinaryMask() = default;
    BinaryMask(int h, int w, bool fill = false)
        : height(h), width(w),
          bits(static_cast<std::size_t>(h) * w, fill ? 1 : 0) {}

    bool at(int y, int x) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
    void set(int y, int x, bool v) { bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }

    std::size_t pixel_count() const { return bits.size(); }

    std::size_t foreground_count() const {
        std::size_t n = 0;
        for (auto b : bits) n += b;
        return n;
    }

    bool operator==(const BinaryMask& other) const = default;
};

// Per-pixel foreground probability in [0,1].
struct ProbabilityMap {
    int height = 0;
    int width = 0;
    std::vector<double> values;

    ProbabilityMap() = default;
    ProbabilityMap(int h, int w, double fill = 0.0)
        : height(h), width(w), values(static_cast<std::size_t>(h) * w, fill) {}

    double at(int y, int x) const { return values[static_cast<std::size_t>(y) * width + x]; }
    double& at(int y, int x) { return values[static_cast<std::size_t>(y) * width + x]; }

    std::size_t pixel_count() const { return values.size(); }
};

// bit = (p >= threshold)
BinaryMask binarize(const ProbabilityMap& prob, double threshold = 0.5);

// Nearest-neighbor resize. Used for adapting real image datasets to a
// common working size; makes no fidelity claims beyond that.
ImageTensor resize_nearest(const ImageTensor& img, int out_h, int out_w);
BinaryMask resize_nearest(const BinaryMask& mask, int out_h, int out_w);

}  // namespace alseg
