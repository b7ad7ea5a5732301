#pragma once

#include <string>

#include "config_store.hpp"

namespace alseg {

// Command entry points shared by the C API and by tests. Each throws on
// failure: ConfigError for bad configuration, other Error types for runtime
// problems.
void cmd_generate(const ConfigStore& cfg);
void cmd_run(const ConfigStore& cfg);
void cmd_compare(const ConfigStore& cfg);
void cmd_sweep(const ConfigStore& cfg);
void cmd_knn_inspect(const ConfigStore& cfg);
void cmd_plot(const ConfigStore& cfg);

// Resolved location helpers, shared with tests.
std::string dataset_manifest_path(const ConfigStore& cfg);
std::string dataset_name(const ConfigStore& cfg);
std::string session_dir(const ConfigStore& cfg, const std::string& method,
                        std::uint64_t seed);

}  // namespace alseg
