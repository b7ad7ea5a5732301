#include "image.hpp"

namespace alseg {

BinaryMask binarize(const ProbabilityMap& prob, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw DomainError("binarize: threshold must lie in (0,1)");
    BinaryMask mask(prob.height, prob.width);
    for (std::size_t i = 0; i < prob.values.size(); ++i)
        mask.bits[i] = prob.values[i] >= threshold ? 1 : 0;
    return mask;
}

ImageTensor resize_nearest(const ImageTensor& img, int out_h, int out_w) {
    if (out_h < 1 || out_w < 1) throw DomainError("resize_nearest: bad target size");
    ImageTensor out(out_h, out_w, img.channels);
    for (int c = 0; c < img.channels; ++c)
        for (int y = 0; y < out_h; ++y) {
            int sy = static_cast<int>((static_cast<long long>(y) * img.height) / out_h);
            for (int x = 0; x < out_w; ++x) {
                int sx = static_cast<int>((static_cast<long long>(x) * img.width) / out_w);
                out.at(c, y, x) = img.at(c, sy, sx);
            }
        }
    return out;
}

BinaryMask resize_nearest(const BinaryMask& mask, int out_h, int out_w) {
    if (out_h < 1 || out_w < 1) throw DomainError("resize_nearest: bad target size");
    BinaryMask out(out_h, out_w);
    for (int y = 0; y < out_h; ++y) {
        int sy = static_cast<int>((static_cast<long long>(y) * mask.height) / out_h);
        for (int x = 0; x < out_w; ++x) {
            int sx = static_cast<int>((static_cast<long long>(x) * mask.width) / out_w);
            out.set(y, x, mask.at(sy, sx));
        }
    }
    return out;
}

}  // namespace alseg
