#include "histogram.hpp"

#include <cmath>

#include "common.hpp"

namespace alseg {

Descriptor color_histogram(const ImageTensor& image, int bins) {
    if (bins < 2) throw DomainError("color_histogram: bins must be >= 2");
    Descriptor d;
    d.bins = bins;
    d.planes.assign(static_cast<std::size_t>(image.channels),
                    std::vector<double>(static_cast<std::size_t>(bins), 0.0));
    std::size_t px = image.pixel_count();
    for (int c = 0; c < image.channels; ++c) {
        auto& plane = d.planes[static_cast<std::size_t>(c)];
        const double* v = image.values.data() + static_cast<std::size_t>(c) * px;
        for (std::size_t i = 0; i < px; ++i) {
            int b = static_cast<int>(v[i] * bins);
            if (b >= bins) b = bins - 1;  // value 1.0
            if (b < 0) b = 0;
            plane[static_cast<std::size_t>(b)] += 1.0;
        }
        for (auto& f : plane) f /= static_cast<double>(px);
    }
    return d;
}

double jsd(const Descriptor& p, const Descriptor& q) {
    if (p.bins != q.bins || p.planes.size() != q.planes.size())
        throw DomainError("jsd: descriptor shape mismatch");
    double total = 0.0;
    for (std::size_t c = 0; c < p.planes.size(); ++c) {
        const auto& a = p.planes[c];
        const auto& b = q.planes[c];
        double plane_sum = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            double m = 0.5 * (a[i] + b[i]);
            double t = 0.0;
            if (a[i] > 0.0) t += 0.5 * a[i] * std::log2(a[i] / m);
            if (b[i] > 0.0) t += 0.5 * b[i] * std::log2(b[i] / m);
            plane_sum += t;
        }
        total += plane_sum;
    }
    return total;
}

std::map<int, Descriptor> build_descriptor_index(const Dataset& dataset, int bins) {
    std::map<int, Descriptor> index;
    for (int id : dataset.train_ids)
        index.emplace(id, color_histogram(dataset.at(id).image, bins));
    return index;
}

}  // namespace alseg
