#include "report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "common.hpp"

namespace alseg {
namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("report: cannot write " + path);
    return out;
}

}  // namespace

void write_rounds_csv(const std::string& path, const std::vector<RoundRecord>& rounds) {
    auto out = open_out(path);
    out << "round,dice_test,dice_pseudo,n_unlabeled,n_labeled,n_pseudo\n";
    for (const auto& r : rounds) {
        out << r.round << "," << g17(r.test_dice) << ",";
        if (r.pseudo_dice) out << g17(*r.pseudo_dice);
        out << "," << r.n_unlabeled << "," << r.n_labeled << "," << r.n_pseudo << "\n";
    }
    if (!out) throw IoError("report: write failed for " + path);
}

std::vector<RoundsCsvRow> read_rounds_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("report: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) ||
        line != "round,dice_test,dice_pseudo,n_unlabeled,n_labeled,n_pseudo")
        throw IoError("report: bad rounds.csv header in " + path);

    std::vector<RoundsCsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        RoundsCsvRow row;
        std::getline(ss, field, ',');
        row.round = std::stoi(field);
        std::getline(ss, field, ',');
        row.test_dice = std::stod(field);
        std::getline(ss, field, ',');
        if (!field.empty()) row.pseudo_dice = std::stod(field);
        std::getline(ss, field, ',');
        row.n_unlabeled = std::stoul(field);
        std::getline(ss, field, ',');
        row.n_labeled = std::stoul(field);
        std::getline(ss, field, ',');
        row.n_pseudo = std::stoul(field);
        rows.push_back(row);
    }
    return rows;
}

void write_session_json(const std::string& path, const SessionRecord& record) {
    nlohmann::json j;
    j["method"] = record.method;
    j["seed"] = record.seed;
    j["rounds"] = record.rounds.size();
    j["auc"] = record.auc;
    j["final_dice_test"] = record.rounds.empty() ? 0.0 : record.rounds.back().test_dice;
    j["final_n_labeled"] = record.rounds.empty() ? 0 : record.rounds.back().n_labeled;
    j["final_n_pseudo"] = record.rounds.empty() ? 0 : record.rounds.back().n_pseudo;
    j["wall_ms"] = record.wall_ms;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

void write_score_dump_csv(const std::string& path, const std::vector<ScoreDumpRow>& rows) {
    auto out = open_out(path);
    out << "round,id,class,score,selected\n";
    for (const auto& r : rows)
        out << r.round << "," << r.id << "," << r.class_label << "," << g17(r.score) << ","
            << (r.selected ? 1 : 0) << "\n";
}

void write_auc_csv(const std::string& path, const std::vector<MethodAggregate>& aggregates) {
    auto out = open_out(path);
    out << "method,auc_mean,auc_std\n";
    for (const auto& a : aggregates)
        out << a.method << "," << g17(a.auc.mean) << "," << g17(a.auc.std) << "\n";
}

void write_round_aggregate_csv(const std::string& path,
                               const std::vector<MethodAggregate>& aggregates) {
    auto out = open_out(path);
    out << "method,round,dice_mean,dice_std\n";
    for (const auto& a : aggregates)
        for (std::size_t r = 0; r < a.per_round.size(); ++r)
            out << a.method << "," << r + 1 << "," << g17(a.per_round[r].mean) << ","
                << g17(a.per_round[r].std) << "\n";
}

std::string format_compare_table(const std::vector<MethodAggregate>& aggregates) {
    char buf[128];
    std::string table = "method        auc_mean   auc_std\n";
    for (const auto& a : aggregates) {
        std::snprintf(buf, sizeof(buf), "%-12s  %8.4f  %8.4f\n", a.method.c_str(),
                      a.auc.mean, a.auc.std);
        table += buf;
    }
    return table;
}

}  // namespace alseg
