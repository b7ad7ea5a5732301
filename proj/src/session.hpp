#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "acquisition.hpp"
#include "histogram.hpp"
#include "knn.hpp"
#include "learner.hpp"
#include "metrics.hpp"
#include "oracle.hpp"
#include "pool.hpp"
#include "sample.hpp"

namespace alseg {

struct SessionConfig {
    Method method = Method::LabelProp;
    int k = 40;
    int bins = 32;
    int maxr = 10;
    int replications = 5;
    int inner_repeats = 2;  // 2 = budget-preserving double pass, 1 = plain loop
    std::uint64_t base_seed = 0;
    long long init_seed = -1;  // -1 derives the model init from the session seed
    double threshold = 0.5;
    AcquisitionConfig acquisition;
    LearnerConfig learner;
    bool dump_scores = false;

    void validate() const;
};

struct ScoreDumpRow {
    int round = 0;
    int id = 0;
    int class_label = 0;
    double score = 0.0;
    bool selected = false;
};

struct SessionRecord {
    std::string method;
    std::uint64_t seed = 0;
    std::vector<RoundRecord> rounds;
    double auc = 0.0;
    long long wall_ms = 0;
    SegmenterModel final_model;
    std::vector<ScoreDumpRow> score_dump;  // filled when cfg.dump_scores
};

// One active-learning session: the round loop of the AL protocol. Rounds
// query the oracle under the per-class budget, then train from the captured
// init; the label-propagation method additionally pseudo-labels the
// k-NN candidate set and re-predicts every pseudo-mask with the freshly
// trained model. Owns a private copy of the dataset, so concurrent sessions
// share nothing mutable.
class SessionRunner {
public:
    SessionRunner(const Dataset& dataset, const SessionConfig& cfg,
                  std::uint64_t session_seed);

    SessionRecord run();

    // Exposed for tests: the pool after the last executed round.
    const PoolState& pool() const { return pool_; }

private:
    RoundRecord run_round(int round);
    void oracle_label(const std::vector<int>& ids);
    void pseudo_label_pass();
    std::map<int, double> compute_scores(int round);
    double evaluate_test() const;
    const FeatureMap& features_of(int id);
    bool pseudo_path_enabled() const;

    Dataset dataset_;
    SessionConfig cfg_;
    std::uint64_t seed_;
    std::map<int, int> train_labels_;
    std::map<int, Descriptor> descriptors_;
    NeighborIndex neighbor_index_;
    std::map<int, FeatureMap> feature_cache_;
    PoolState pool_;
    OracleSimulator oracle_;
    Evaluator evaluator_;
    std::map<int, BinaryMask> oracle_masks_;
    SegmenterModel init_model_;   // theta_0, captured once, reused every round
    SegmenterModel model_;        // last trained model
    std::vector<ScoreDumpRow> score_dump_;
};

SessionRecord run_session(const Dataset& dataset, const SessionConfig& cfg,
                          std::uint64_t session_seed);

// Replication i runs with seed base_seed + i; the seed list is shared by
// every method so sessions pair up across methods.
std::vector<std::uint64_t> replication_seeds(const SessionConfig& cfg);

}  // namespace alseg
