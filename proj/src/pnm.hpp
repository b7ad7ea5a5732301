#pragma once

#include <string>

#include "image.hpp"

namespace alseg {

// Binary PGM (P5) and PPM (P6) with maxval 255. This is the project's
// mandatory on-disk image format; header comments (#) are tolerated on read.
//
// Images: P6 for 3-channel, P5 for 1-channel, byte k maps to k/255.
// Masks:  P5, written as 0/255, any value >= 128 reads back as foreground.

ImageTensor read_pnm_image(const std::string& path);
void write_pnm_image(const std::string& path, const ImageTensor& img);

BinaryMask read_pgm_mask(const std::string& path);
void write_pgm_mask(const std::string& path, const BinaryMask& mask);

}  // namespace alseg
