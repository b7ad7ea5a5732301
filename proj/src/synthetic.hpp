#pragma once

#include <cstdint>
#include <string>

#include "sample.hpp"

namespace alseg {

// Desk-scale class-conditional dataset generator. Each class owns
// `modes_per_class` color sub-modes (distinct background/foreground base
// colors); an image draws a sub-mode, gets a per-image color shift shared by
// background and foreground (the stain/illumination analog that makes JSD
// neighborhoods informative), 1..blob_count elliptical foreground blobs, and
// clamped Gaussian pixel noise. Pixels are quantized to 8 bits so a
// write/reload round trip is exact.
struct SyntheticConfig {
    int classes = 2;
    int train_per_class = 50;
    int valid_per_class = 10;
    int test_per_class = 25;
    int height = 32;
    int width = 32;
    int channels = 3;
    int modes_per_class = 2;
    int blob_min = 1;
    int blob_max = 3;
    double noise_std = 0.14;
    double color_jitter = 0.02;  // per-image shift amplitude
    double fg_min = 0.05;        // foreground-fraction band
    double fg_max = 0.5;
    std::uint64_t seed = 0;

    void validate() const;
};

Dataset generate_synthetic(const SyntheticConfig& cfg);

// Base colors of a sub-mode, exposed for tests.
struct ModePalette {
    double bg[3];
    double fg[3];
};
ModePalette mode_palette(const SyntheticConfig& cfg, int class_label, int mode);

// Writes images/, masks/, manifest.csv and a config.txt echo under dir.
void write_dataset(const Dataset& dataset, const std::string& dir,
                   const SyntheticConfig& cfg);

}  // namespace alseg
