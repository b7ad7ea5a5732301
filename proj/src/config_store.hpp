#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace alseg {

struct ConfigKeyInfo {
    const char* name;
    const char* default_value;
    const char* doc;
};

// Flat key-value configuration: defaults from the registry, optionally
// overlaid by a `key = value` file ('#' comments) and by command-line flags
// (flags win). Unknown keys are rejected by name, so --help and the accepted
// surface can never drift apart.
class ConfigStore {
public:
    ConfigStore();

    static const std::vector<ConfigKeyInfo>& registry();

    void load_file(const std::string& path);
    void set(const std::string& key, const std::string& value);

    const std::string& get(const std::string& key) const;
    int get_int(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key) const;
    double get_double(const std::string& key) const;
    bool get_bool(const std::string& key) const;

    // Deterministic `key = value` echo of the full resolved configuration.
    std::string echo() const;

private:
    std::map<std::string, std::string> values_;
};

}  // namespace alseg
