#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace alseg {

// All randomness in the project flows through seeds derived here. Derived
// streams are independent of each other and of evaluation order, which is
// what makes sessions replayable and parallelizable.

// splitmix64 finalizer; good avalanche, cheap.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Fold a tag (purpose string hashed at call sites as plain integers) and
// indices into a base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t s = mix64(base ^ mix64(tag));
    s = mix64(s ^ mix64(a + 0x632be59bd9b4e019ULL));
    s = mix64(s ^ mix64(b + 0x9e6c63d0876a9a47ULL));
    return s;
}

// Purpose tags for derived streams. Values are arbitrary but frozen:
// changing them changes every downstream draw.
namespace seed_tag {
constexpr std::uint64_t oracle_round = 0x01;
constexpr std::uint64_t train = 0x02;
constexpr std::uint64_t mc_dropout = 0x03;
constexpr std::uint64_t model_init = 0x04;
constexpr std::uint64_t synth_sample = 0x05;
constexpr std::uint64_t split = 0x06;
constexpr std::uint64_t synth_mode = 0x07;
}  // namespace seed_tag

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, n). Modulo bias is ~n/2^64, irrelevant at our scales.
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

    // Uniform double in [0, 1).
    double uniform() {
        return (engine_() >> 11) * (1.0 / 9007199254740992.0);
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Marsaglia polar method; avoids std::normal_distribution, whose output
    // sequence is not pinned by the standard.
    double gaussian(double stddev) {
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        return stddev * u * std::sqrt(-2.0 * std::log(s) / s);
    }

    // In-place Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // First `count` elements of a shuffle of `v`, preserving uniformity.
    template <typename T>
    std::vector<T> sample_without_replacement(std::vector<T> v, std::size_t count) {
        if (count > v.size()) count = v.size();
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t j = i + static_cast<std::size_t>(below(v.size() - i));
            std::swap(v[i], v[j]);
        }
        v.resize(count);
        return v;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace alseg
