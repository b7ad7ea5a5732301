#pragma once

#include <string>
#include <vector>

#include "metrics.hpp"
#include "session.hpp"

namespace alseg {

// Per-session rounds.csv. No wall-clock column: content files must be
// byte-identical across reruns of the same config and seed.
void write_rounds_csv(const std::string& path, const std::vector<RoundRecord>& rounds);

struct RoundsCsvRow {
    int round = 0;
    double test_dice = 0.0;
    std::optional<double> pseudo_dice;
    std::size_t n_unlabeled = 0, n_labeled = 0, n_pseudo = 0;
};
std::vector<RoundsCsvRow> read_rounds_csv(const std::string& path);

void write_session_json(const std::string& path, const SessionRecord& record);

void write_score_dump_csv(const std::string& path, const std::vector<ScoreDumpRow>& rows);

// `method,auc_mean,auc_std` rows.
void write_auc_csv(const std::string& path, const std::vector<MethodAggregate>& aggregates);

// `method,round,dice_mean,dice_std` rows.
void write_round_aggregate_csv(const std::string& path,
                               const std::vector<MethodAggregate>& aggregates);

std::string format_compare_table(const std::vector<MethodAggregate>& aggregates);

}  // namespace alseg
