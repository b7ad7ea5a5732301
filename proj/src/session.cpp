#include "session.hpp"

#include <algorithm>
#include <chrono>

#include "common.hpp"
#include "rng.hpp"

namespace alseg {

void SessionConfig::validate() const {
    if (maxr < 1) throw ConfigError("session: maxr must be >= 1");
    if (replications < 1) throw ConfigError("session: replications must be >= 1");
    if (inner_repeats != 1 && inner_repeats != 2)
        throw ConfigError("session: inner_repeats must be 1 or 2");
    if (k < 1) throw ConfigError("session: k must be >= 1");
    if (bins < 2) throw ConfigError("session: bins must be >= 2");
    if (!(threshold > 0 && threshold < 1))
        throw ConfigError("session: threshold must lie in (0,1)");
    acquisition.validate();
    learner.validate();
}

SessionRunner::SessionRunner(const Dataset& dataset, const SessionConfig& cfg,
                             std::uint64_t session_seed)
    : dataset_(dataset),
      cfg_(cfg),
      seed_(session_seed),
      pool_(dataset_.train_ids),
      oracle_(dataset_),
      evaluator_(dataset_) {
    cfg_.validate();
    if (dataset_.train_ids.empty()) throw ConfigError("session: no training samples");
    if (dataset_.test_ids.empty()) throw ConfigError("session: no test samples");

    for (int id : dataset_.train_ids)
        train_labels_[id] = dataset_.at(id).class_label;

    // Budget feasibility before round 1.
    if (cfg_.method != Method::FullSup) {
        std::map<int, int> per_class;
        for (const auto& [id, label] : train_labels_) per_class[label]++;
        for (const auto& [label, count] : per_class)
            if (count < cfg_.acquisition.per_class_first_round)
                throw ConfigError("session: class " + std::to_string(label) + " has " +
                                  std::to_string(count) +
                                  " training samples, fewer than the first-round budget of " +
                                  std::to_string(cfg_.acquisition.per_class_first_round));
    }

    if (pseudo_path_enabled()) {
        descriptors_ = build_descriptor_index(dataset_, cfg_.bins);
        neighbor_index_ = NeighborIndex::build(descriptors_, train_labels_, cfg_.k);
    }

    std::uint64_t init_seed = cfg_.init_seed >= 0
                                  ? static_cast<std::uint64_t>(cfg_.init_seed)
                                  : derive_seed(seed_, seed_tag::model_init);
    int channels = dataset_.at(dataset_.train_ids.front()).image.channels;
    init_model_ = init_model(channels, init_seed);
    model_ = init_model_;
}

bool SessionRunner::pseudo_path_enabled() const {
    // lambda = 0 is the ablation switch: pseudo-masks would carry zero loss
    // weight, so the whole pseudo pathway (including its effect on the
    // query pool) is disabled and the session degenerates to plain random
    // selection.
    return cfg_.method == Method::LabelProp && cfg_.learner.lambda > 0.0;
}

const FeatureMap& SessionRunner::features_of(int id) {
    auto it = feature_cache_.find(id);
    if (it == feature_cache_.end())
        it = feature_cache_.emplace(id, extract_features(dataset_.at(id).image)).first;
    return it->second;
}

void SessionRunner::oracle_label(const std::vector<int>& ids) {
    pool_.promote_to_labeled(ids);
    for (int id : ids) {
        BinaryMask mask = oracle_.annotate(id);
        dataset_.at(id).annotation = {AnnotationKind::OracleLabeled, mask};
        oracle_masks_[id] = std::move(mask);
    }
}

void SessionRunner::pseudo_label_pass() {
    // New candidates get predicted masks and enter P; everything already in
    // P is re-predicted with the current model, so pseudo supervision always
    // reflects the latest training pass.
    std::set<int> candidates = select_pseudo_candidates(neighbor_index_, pool_);
    std::map<int, BinaryMask> fresh;
    for (int id : candidates)
        fresh.emplace(id, binarize(predict(model_, features_of(id)), cfg_.threshold));
    pool_.promote_to_pseudo(std::vector<int>(candidates.begin(), candidates.end()), fresh);

    for (int id : pool_.pseudo()) {
        BinaryMask mask = candidates.count(id)
                              ? fresh.at(id)
                              : binarize(predict(model_, features_of(id)), cfg_.threshold);
        dataset_.at(id).annotation = {AnnotationKind::PseudoLabeled, mask};
        pool_.refresh_pseudo_mask(id, std::move(mask));
    }
}

std::map<int, double> SessionRunner::compute_scores(int round) {
    std::map<int, double> scores;
    if (cfg_.method != Method::Entropy && cfg_.method != Method::McDropout) return scores;

    std::vector<int> eligible(pool_.unlabeled().begin(), pool_.unlabeled().end());
    eligible.insert(eligible.end(), pool_.pseudo().begin(), pool_.pseudo().end());
    for (int id : eligible) {
        double s;
        if (cfg_.method == Method::Entropy) {
            s = score_entropy(predict(model_, features_of(id)));
        } else {
            s = score_mc_dropout(model_, features_of(id), cfg_.acquisition.mc_passes,
                                 cfg_.acquisition.mc_dropout_rate,
                                 derive_seed(seed_, seed_tag::mc_dropout,
                                             static_cast<std::uint64_t>(round),
                                             static_cast<std::uint64_t>(id)));
        }
        scores[id] = s;
    }
    return scores;
}

double SessionRunner::evaluate_test() const {
    double sum = 0.0;
    for (int id : dataset_.test_ids) {
        BinaryMask pred = binarize(predict(model_, dataset_.at(id).image), cfg_.threshold);
        sum += evaluator_.dice_against_truth(id, pred);
    }
    return sum / static_cast<double>(dataset_.test_ids.size());
}

RoundRecord SessionRunner::run_round(int round) {
    auto t0 = std::chrono::steady_clock::now();
    RoundRecord rec;
    rec.round = round;

    if (cfg_.method == Method::FullSup) {
        // Upper bound: every training sample is oracle-labeled, one round.
        std::vector<int> all(pool_.unlabeled().begin(), pool_.unlabeled().end());
        oracle_label(all);
        rec.queried_ids = all;
    } else {
        // Round 1 is a method-independent random draw (the seed mixes only
        // the session seed and the round), so all methods share it.
        bool random_draw = round == 1 || cfg_.method == Method::Random ||
                           cfg_.method == Method::LabelProp;
        std::map<int, double> scores;
        if (!random_draw) scores = compute_scores(round);
        int budget = round == 1 ? cfg_.acquisition.per_class_first_round
                                : cfg_.acquisition.per_class_later_rounds;
        std::vector<int> queried = select_queries(
            pool_, train_labels_, scores, random_draw, budget,
            derive_seed(seed_, seed_tag::oracle_round, static_cast<std::uint64_t>(round)));
        if (cfg_.dump_scores) {
            for (int id : pool_.unlabeled()) {
                bool sel = std::binary_search(queried.begin(), queried.end(), id);
                double s = scores.count(id) ? scores.at(id) : 0.0;
                score_dump_.push_back({round, id, train_labels_.at(id), s, sel});
            }
            for (int id : pool_.pseudo()) {
                bool sel = std::binary_search(queried.begin(), queried.end(), id);
                double s = scores.count(id) ? scores.at(id) : 0.0;
                score_dump_.push_back({round, id, train_labels_.at(id), s, sel});
            }
        }
        oracle_label(queried);
        rec.queried_ids = std::move(queried);
    }

    int passes = cfg_.method == Method::FullSup ? 1 : cfg_.inner_repeats;
    for (int pass = 0; pass < passes; ++pass) {
        std::vector<TrainItem> labeled, pseudo;
        for (int id : pool_.labeled())
            labeled.push_back({id, &features_of(id), &oracle_masks_.at(id), 1.0});
        for (int id : pool_.pseudo())
            pseudo.push_back({id, &features_of(id), &pool_.pseudo_mask(id), cfg_.learner.lambda});

        LearnerConfig lc = cfg_.learner;
        lc.train_seed = derive_seed(seed_, seed_tag::train, static_cast<std::uint64_t>(round),
                                    static_cast<std::uint64_t>(pass));
        model_ = train(init_model_, labeled, pseudo, lc);

        if (pseudo_path_enabled()) pseudo_label_pass();
    }

    rec.test_dice = evaluate_test();
    if (!pool_.pseudo().empty()) rec.pseudo_dice = evaluator_.pseudo_dice(pool_);
    rec.n_unlabeled = pool_.unlabeled().size();
    rec.n_labeled = pool_.labeled().size();
    rec.n_pseudo = pool_.pseudo().size();
    rec.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    pool_.advance_round();
    return rec;
}

SessionRecord SessionRunner::run() {
    auto t0 = std::chrono::steady_clock::now();
    SessionRecord record;
    record.method = method_name(cfg_.method);
    record.seed = seed_;

    int rounds = cfg_.method == Method::FullSup ? 1 : cfg_.maxr;
    for (int r = 1; r <= rounds; ++r) record.rounds.push_back(run_round(r));

    std::vector<double> curve;
    curve.reserve(record.rounds.size());
    for (const auto& rec : record.rounds) curve.push_back(rec.test_dice);
    record.auc = auc_dice(curve);
    record.final_model = model_;
    record.score_dump = std::move(score_dump_);
    record.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return record;
}

SessionRecord run_session(const Dataset& dataset, const SessionConfig& cfg,
                          std::uint64_t session_seed) {
    SessionRunner runner(dataset, cfg, session_seed);
    return runner.run();
}

std::vector<std::uint64_t> replication_seeds(const SessionConfig& cfg) {
    std::vector<std::uint64_t> seeds;
    seeds.reserve(static_cast<std::size_t>(cfg.replications));
    for (int i = 0; i < cfg.replications; ++i)
        seeds.push_back(cfg.base_seed + static_cast<std::uint64_t>(i));
    return seeds;
}

}  // namespace alseg
