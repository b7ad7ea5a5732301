#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "features.hpp"
#include "image.hpp"

namespace alseg {

struct LearnerConfig {
    double lambda = 0.1;       // pseudo-term weight in the training objective
    int epochs = 30;
    double learning_rate = 0.5;
    double l2 = 1e-4;          // weight decay on features, bias excluded
    int batch_pixels = 256;
    std::uint64_t train_seed = 0;  // drives batch order only

    void validate() const;
};

// Per-pixel logistic segmenter. Weights follow the FeatureMap layout; the
// bias is carried separately and never dropped or decayed.
struct SegmenterModel {
    int channels = 0;
    std::vector<double> weights;
    double bias = 0.0;

    bool same_shape(const SegmenterModel& other) const {
        return channels == other.channels && weights.size() == other.weights.size();
    }
};

// Small uniform random weights; the session captures this once and re-trains
// from it every round.
SegmenterModel init_model(int channels, std::uint64_t init_seed);

// One training item: an image's features plus its target mask and its weight
// in the objective (1 for oracle-labeled, lambda for pseudo-labeled).
struct TrainItem {
    int id = -1;
    const FeatureMap* features = nullptr;
    const BinaryMask* mask = nullptr;
    double weight = 1.0;
};

// Full objective: sum over items of weight * per-image-mean binary
// cross-entropy, plus l2 * ||w||^2 (bias excluded). Gradient is written to
// `grad` (weights then bias) when non-null.
double objective(const SegmenterModel& model, const std::vector<TrainItem>& items,
                 double l2, std::vector<double>* grad = nullptr);

// Mini-batch SGD over pixels, starting from `start`. Items with zero weight
// are not visited, so training with lambda = 0 walks the exact trajectory of
// labeled-only training. Deterministic given cfg.train_seed.
SegmenterModel train(const SegmenterModel& start, const std::vector<TrainItem>& labeled,
                     const std::vector<TrainItem>& pseudo, const LearnerConfig& cfg);

ProbabilityMap predict(const SegmenterModel& model, const FeatureMap& features);
ProbabilityMap predict(const SegmenterModel& model, const ImageTensor& image);

// One stochastic forward pass: every feature (not the bias) is zeroed with
// probability `rate` and survivors are scaled by 1/(1-rate). The mask is
// drawn once per pass and applied at every pixel.
ProbabilityMap predict_stochastic(const SegmenterModel& model, const FeatureMap& features,
                                  double rate, std::uint64_t seed);

// Text checkpoint, versioned with a magic line. Weights round-trip exactly.
void save_model(const std::string& path, const SegmenterModel& model,
                const LearnerConfig& cfg);
SegmenterModel load_model(const std::string& path);

}  // namespace alseg
