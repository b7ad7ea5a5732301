#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "learner.hpp"
#include "pool.hpp"

namespace alseg {

enum class Method { Random, Entropy, McDropout, LabelProp, FullSup };

Method parse_method(const std::string& name);
std::string method_name(Method m);

struct AcquisitionConfig {
    Method method = Method::Random;
    int per_class_first_round = 4;
    int per_class_later_rounds = 1;
    int mc_passes = 50;
    double mc_dropout_rate = 0.2;

    void validate() const;
};

// Mean over pixels of the base-2 binary entropy of the foreground
// probability.
double score_entropy(const ProbabilityMap& prob);

// Mean over pixels of the population variance of the foreground probability
// across `passes` stochastic forward predictions. Deterministic given seed.
double score_mc_dropout(const SegmenterModel& model, const FeatureMap& features,
                        int passes, double rate, std::uint64_t seed);

// Per-class oracle query selection for one round. Per class: top-b by
// (score descending, id ascending), or a uniform draw for random rounds,
// taken from U \ P first; P fills the remainder only once a class's
// non-pseudo unlabeled pool is exhausted, and a still-short class degrades
// to whatever exists. Round 1 is always a random draw seeded independently
// of the method, so every method starts from the same labeled set.
std::vector<int> select_queries(const PoolState& pool,
                                const std::map<int, int>& class_labels,
                                const std::map<int, double>& scores,  // empty for random
                                bool random_round, int per_class_budget,
                                std::uint64_t round_seed);

}  // namespace alseg
