#pragma once

#include <optional>
#include <string>
#include <vector>

#include "image.hpp"

namespace alseg {

// Dice overlap 2|A∩B| / (|A|+|B|). Both masks empty -> 1.0 (and empty vs
// non-empty is then 0 by the formula).
double dice(const BinaryMask& pred, const BinaryMask& gt);

// Normalized trapezoidal area under a per-round curve: a constant curve c
// maps to c, so the result stays on the Dice scale regardless of maxr.
// A single-point curve is its own value.
double auc_dice(const std::vector<double>& curve);

struct RoundRecord {
    int round = 0;
    double test_dice = 0.0;
    std::optional<double> pseudo_dice;  // absent while P is empty
    std::size_t n_unlabeled = 0;
    std::size_t n_labeled = 0;
    std::size_t n_pseudo = 0;
    long long wall_ms = 0;              // reporting only, never in content files
    std::vector<int> queried_ids;       // U' of this round
};

// Mean and sample standard deviation (n-1); n == 1 reports std 0.
struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};
MeanStd mean_std(const std::vector<double>& values);

// Per-method aggregate over replications.
struct MethodAggregate {
    std::string method;
    MeanStd auc;
    std::vector<MeanStd> per_round;  // test dice per round
};

// All replications must agree on the round count.
MethodAggregate aggregate_method(const std::string& method,
                                 const std::vector<std::vector<double>>& dice_curves);

}  // namespace alseg
