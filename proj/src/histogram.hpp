#pragma once

#include <map>
#include <vector>

#include "image.hpp"
#include "sample.hpp"

namespace alseg {

// Per-channel normalized color histogram. Each plane sums to 1.
struct Descriptor {
    int bins = 0;
    std::vector<std::vector<double>> planes;  // planes.size() == channels
};

// Equal-width bins over [0,1]; the value 1.0 falls into the last bin.
// Normalized by pixel count.
Descriptor color_histogram(const ImageTensor& image, int bins);

// Image proximity: per plane, JSD(p||q) = 0.5*KL(p||m) + 0.5*KL(q||m) with
// m = (p+q)/2, base-2 logs, 0*log0 = 0; the result is the sum over planes.
// Each plane contributes a value in [0,1]. Symmetric bit-for-bit: per bin
// the two half-terms commute and bins accumulate in a fixed order.
double jsd(const Descriptor& p, const Descriptor& q);

// Descriptors for every training sample, keyed by id. Pure; computed once
// per session.
std::map<int, Descriptor> build_descriptor_index(const Dataset& dataset, int bins);

}  // namespace alseg
