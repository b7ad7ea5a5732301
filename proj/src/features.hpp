#pragma once

#include "image.hpp"

namespace alseg {

// Per-pixel feature map for the reference segmenter: raw channel
// intensities, normalized coordinates x/W and y/H, and per-channel 3x3
// local means with edge-replicated padding. 2C+2 features per pixel; the
// model adds the bias itself.
//
// Pixel-major layout: value(px, j) = data[px * count + j]. Feature order is
// [intensity_0..C-1, x/W, y/H, mean_0..C-1].
struct FeatureMap {
    int height = 0;
    int width = 0;
    int count = 0;  // features per pixel
    std::vector<double> data;

    const double* at(std::size_t pixel) const { return data.data() + pixel * count; }
    std::size_t pixel_count() const { return static_cast<std::size_t>(height) * width; }
};

int feature_count(int channels);

FeatureMap extract_features(const ImageTensor& image);

}  // namespace alseg
