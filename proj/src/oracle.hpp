#pragma once

#include <map>
#include <vector>

#include "metrics.hpp"
#include "pool.hpp"
#include "sample.hpp"

namespace alseg {

// Perfect simulated oracle: the only component besides the evaluator with
// ground-truth access. Annotating a sample returns an exact copy of its
// hidden mask.
class OracleSimulator {
public:
    explicit OracleSimulator(const Dataset& dataset) : dataset_(&dataset) {}

    BinaryMask annotate(int id) const {
        return dataset_->at(id).ground_truth(GroundTruthKey{});
    }

    std::map<int, BinaryMask> annotate(const std::vector<int>& ids) const {
        std::map<int, BinaryMask> out;
        for (int id : ids) out.emplace(id, annotate(id));
        return out;
    }

private:
    const Dataset* dataset_;
};

// Evaluation-side ground-truth access: test Dice and pseudo-label quality.
class Evaluator {
public:
    explicit Evaluator(const Dataset& dataset) : dataset_(&dataset) {}

    const BinaryMask& ground_truth(int id) const {
        return dataset_->at(id).ground_truth(GroundTruthKey{});
    }

    double dice_against_truth(int id, const BinaryMask& predicted) const {
        return dice(predicted, ground_truth(id));
    }

    // Mean Dice of the stored pseudo-masks over the current P.
    double pseudo_dice(const PoolState& pool) const;

private:
    const Dataset* dataset_;
};

}  // namespace alseg
