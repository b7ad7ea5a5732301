#include "acquisition.hpp"

#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "rng.hpp"

namespace alseg {

Method parse_method(const std::string& name) {
    if (name == "random") return Method::Random;
    if (name == "entropy") return Method::Entropy;
    if (name == "mc_dropout") return Method::McDropout;
    if (name == "label_prop") return Method::LabelProp;
    if (name == "full_sup") return Method::FullSup;
    if (name == "wsl")
        throw ConfigError("method 'wsl' (CAM lower bound) is not supported by this tool");
    throw ConfigError("unknown method '" + name +
                      "' (expected random|entropy|mc_dropout|label_prop|full_sup)");
}

std::string method_name(Method m) {
    switch (m) {
        case Method::Random: return "random";
        case Method::Entropy: return "entropy";
        case Method::McDropout: return "mc_dropout";
        case Method::LabelProp: return "label_prop";
        case Method::FullSup: return "full_sup";
    }
    return "?";
}

void AcquisitionConfig::validate() const {
    if (per_class_first_round < 1 || per_class_later_rounds < 1)
        throw ConfigError("acquisition: per-class budgets must be >= 1");
    if (mc_passes < 1) throw ConfigError("acquisition: mc_passes must be >= 1");
    if (!(mc_dropout_rate >= 0.0 && mc_dropout_rate < 1.0))
        throw ConfigError("acquisition: mc_dropout_rate must lie in [0,1)");
}

double score_entropy(const ProbabilityMap& prob) {
    double sum = 0.0;
    for (double p : prob.values) {
        double h = 0.0;
        if (p > 0.0) h -= p * std::log2(p);
        if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
        sum += h;
    }
    return sum / static_cast<double>(prob.values.size());
}

double score_mc_dropout(const SegmenterModel& model, const FeatureMap& features,
                        int passes, double rate, std::uint64_t seed) {
    if (passes < 1) throw DomainError("score_mc_dropout: passes must be >= 1");
    if (passes == 1 || rate == 0.0) return 0.0;  // variance of identical passes

    const std::size_t n = features.pixel_count();
    std::vector<double> sum(n, 0.0), sum_sq(n, 0.0);
    for (int pass = 0; pass < passes; ++pass) {
        ProbabilityMap p = predict_stochastic(
            model, features, rate,
            derive_seed(seed, seed_tag::mc_dropout, static_cast<std::uint64_t>(pass)));
        for (std::size_t i = 0; i < n; ++i) {
            sum[i] += p.values[i];
            sum_sq[i] += p.values[i] * p.values[i];
        }
    }
    double total = 0.0;
    const double inv = 1.0 / static_cast<double>(passes);
    for (std::size_t i = 0; i < n; ++i) {
        double mean = sum[i] * inv;
        double var = sum_sq[i] * inv - mean * mean;
        total += var > 0.0 ? var : 0.0;
    }
    return total / static_cast<double>(n);
}

std::vector<int> select_queries(const PoolState& pool,
                                const std::map<int, int>& class_labels,
                                const std::map<int, double>& scores,
                                bool random_round, int per_class_budget,
                                std::uint64_t round_seed) {
    if (per_class_budget < 1) throw DomainError("select_queries: budget must be >= 1");

    // Eligible ids per class, split into the protected and unprotected pools.
    std::map<int, std::vector<int>> fresh, protected_pool;
    for (int id : pool.unlabeled()) fresh[class_labels.at(id)].push_back(id);
    for (int id : pool.pseudo()) protected_pool[class_labels.at(id)].push_back(id);

    std::set<int> classes;
    for (const auto& [id, label] : class_labels) classes.insert(label);

    std::vector<int> selected;
    for (int label : classes) {
        auto take = [&](std::vector<int>& ids, int want) {
            if (want <= 0 || ids.empty()) return 0;
            std::sort(ids.begin(), ids.end());
            std::vector<int> picked;
            if (random_round) {
                Rng rng(derive_seed(round_seed, seed_tag::oracle_round,
                                    static_cast<std::uint64_t>(label)));
                picked = rng.sample_without_replacement(ids, static_cast<std::size_t>(want));
            } else {
                std::sort(ids.begin(), ids.end(), [&](int a, int b) {
                    double sa = scores.at(a), sb = scores.at(b);
                    if (sa != sb) return sa > sb;
                    return a < b;
                });
                picked.assign(ids.begin(),
                              ids.begin() + std::min<std::ptrdiff_t>(
                                                want, static_cast<std::ptrdiff_t>(ids.size())));
            }
            selected.insert(selected.end(), picked.begin(), picked.end());
            return static_cast<int>(picked.size());
        };

        int got = take(fresh[label], per_class_budget);
        // The "inevitable" fallback: pseudo-labeled samples may be queried
        // only once the class has nothing else to offer.
        if (got < per_class_budget)
            take(protected_pool[label], per_class_budget - got);
    }
    std::sort(selected.begin(), selected.end());
    return selected;
}

}  // namespace alseg
