#include "features.hpp"

#include <algorithm>

namespace alseg {

int feature_count(int channels) { return 2 * channels + 2; }

FeatureMap extract_features(const ImageTensor& image) {
    image.validate_shape();
    const int H = image.height, W = image.width, C = image.channels;

    FeatureMap fm;
    fm.height = H;
    fm.width = W;
    fm.count = feature_count(C);
    fm.data.resize(static_cast<std::size_t>(H) * W * fm.count);

    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            std::size_t px = static_cast<std::size_t>(y) * W + x;
            double* f = fm.data.data() + px * fm.count;
            for (int c = 0; c < C; ++c) f[c] = image.at(c, y, x);
            f[C] = static_cast<double>(x) / W;
            f[C + 1] = static_cast<double>(y) / H;
            for (int c = 0; c < C; ++c) {
                double sum = 0.0;
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        int yy = std::clamp(y + dy, 0, H - 1);
                        int xx = std::clamp(x + dx, 0, W - 1);
                        sum += image.at(c, yy, xx);
                    }
                f[C + 2 + c] = sum / 9.0;
            }
        }
    }
    return fm;
}

}  // namespace alseg
