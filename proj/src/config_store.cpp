#include "config_store.hpp"

#include <fstream>

#include "common.hpp"

namespace alseg {
namespace {

const std::vector<ConfigKeyInfo> kRegistry = {
    {"dataset", "", "dataset directory (or its manifest.csv); generate writes here"},
    {"out", "out", "output root for run/compare/sweep/plot artifacts"},
    {"method", "label_prop", "random | entropy | mc_dropout | label_prop | full_sup"},
    {"seed", "0", "base seed; replication i runs with seed+i (env ALSEG_SEED overrides)"},
    {"replications", "5", "independent sessions per run, one seed each"},
    {"maxr", "10", "active-learning rounds per session"},
    {"k", "40", "neighbors per sample in the per-class k-NN index"},
    {"lambda", "0.1", "pseudo-label loss weight; 0 disables the pseudo pathway"},
    {"bins", "32", "histogram bins per color plane"},
    {"inner_repeats", "2", "training passes per round (2 = reuse this round's pseudo set)"},
    {"per_class_first_round", "4", "oracle budget per class at round 1"},
    {"per_class_later_rounds", "1", "oracle budget per class at rounds > 1"},
    {"mc_passes", "50", "stochastic forward passes for mc_dropout scoring"},
    {"mc_dropout_rate", "0.2", "feature dropout probability for mc_dropout scoring"},
    {"epochs", "30", "SGD epochs per training pass"},
    {"learning_rate", "0.5", "SGD step size"},
    {"l2", "0.0001", "weight decay on feature weights"},
    {"batch_pixels", "256", "pixels per SGD mini-batch"},
    {"init_seed", "-1", "model init seed; -1 derives it from the session seed"},
    {"threshold", "0.5", "binarization threshold for predicted masks"},
    {"jobs", "1", "concurrent sessions during run"},
    {"dump_scores", "0", "write per-round acquisition scores.csv (0/1)"},
    {"valid_fraction", "0",
     "carve a per-class validation split out of train when the manifest has none (0 = off)"},
    {"classes", "2", "generate: number of classes"},
    {"train_per_class", "50", "generate: training samples per class"},
    {"valid_per_class", "10", "generate: validation samples per class"},
    {"test_per_class", "25", "generate: test samples per class"},
    {"height", "32", "generate: image height"},
    {"width", "32", "generate: image width"},
    {"channels", "3", "generate: channels per image (1 or 3)"},
    {"modes_per_class", "2", "generate: color sub-modes per class"},
    {"blob_min", "1", "generate: minimum foreground blobs per image"},
    {"blob_max", "3", "generate: maximum foreground blobs per image"},
    {"noise_std", "0.14", "generate: Gaussian pixel noise, sigma in intensity units"},
    {"color_jitter", "0.02", "generate: per-image color shift amplitude"},
    {"fg_min", "0.05", "generate: lower bound of the foreground-fraction band"},
    {"fg_max", "0.5", "generate: upper bound of the foreground-fraction band"},
    {"param", "", "sweep: hyper-parameter to vary (k or lambda)"},
    {"values", "", "sweep: comma-separated list of parameter values"},
    {"methods", "", "compare/plot: comma-separated methods (empty = discover)"},
    {"id", "-1", "knn-inspect: query sample id"},
    {"dump_descriptors", "0", "knn-inspect: also write descriptors.csv (0/1)"},
};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

const std::vector<ConfigKeyInfo>& ConfigStore::registry() { return kRegistry; }

ConfigStore::ConfigStore() {
    for (const auto& k : kRegistry) values_[k.name] = k.default_value;
}

void ConfigStore::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        try {
            set(key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

void ConfigStore::set(const std::string& key, const std::string& value) {
    auto it = values_.find(key);
    if (it == values_.end())
        throw ConfigError("config: unknown key '" + key + "'");
    it->second = value;
}

const std::string& ConfigStore::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw ConfigError("config: unknown key '" + key + "'");
    return it->second;
}

int ConfigStore::get_int(const std::string& key) const {
    const std::string& v = get(key);
    try {
        std::size_t pos = 0;
        int out = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' needs an integer, got '" + v + "'");
    }
}

std::uint64_t ConfigStore::get_u64(const std::string& key) const {
    const std::string& v = get(key);
    try {
        // stoull would wrap a leading minus sign instead of rejecting it.
        if (v.find('-') != std::string::npos) throw std::invalid_argument(v);
        std::size_t pos = 0;
        unsigned long long out = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return static_cast<std::uint64_t>(out);
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' needs a non-negative integer, got '" +
                          v + "'");
    }
}

double ConfigStore::get_double(const std::string& key) const {
    const std::string& v = get(key);
    try {
        std::size_t pos = 0;
        double out = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' needs a number, got '" + v + "'");
    }
}

bool ConfigStore::get_bool(const std::string& key) const {
    const std::string& v = get(key);
    if (v == "0" || v == "false") return false;
    if (v == "1" || v == "true") return true;
    throw ConfigError("config: key '" + key + "' needs 0/1/true/false, got '" + v + "'");
}

std::string ConfigStore::echo() const {
    std::string out;
    for (const auto& [key, value] : values_) out += key + " = " + value + "\n";
    return out;
}

}  // namespace alseg
