#include "alseg.h"

#include <cstring>
#include <functional>
#include <string>

#include "commands.hpp"
#include "common.hpp"
#include "config_store.hpp"

using alseg::ConfigStore;

struct alseg_config {
    ConfigStore store;
};

namespace {

thread_local std::string t_last_error;

int run_guarded(const char* what, const std::function<void()>& fn) {
    try {
        fn();
        t_last_error.clear();
        return ALSEG_OK;
    } catch (const alseg::ConfigError& e) {
        t_last_error = std::string(what) + ": " + e.what();
        return ALSEG_ERR_CONFIG;
    } catch (const std::exception& e) {
        t_last_error = std::string(what) + ": " + e.what();
        return ALSEG_ERR_RUNTIME;
    } catch (...) {
        t_last_error = std::string(what) + ": unknown error";
        return ALSEG_ERR_RUNTIME;
    }
}

const ConfigStore& store_of(const alseg_config* cfg) {
    if (!cfg) throw alseg::ConfigError("null config handle");
    return cfg->store;
}

}  // namespace

extern "C" {

alseg_config* alseg_config_new(void) {
    try {
        return new alseg_config();
    } catch (...) {
        return nullptr;
    }
}

void alseg_config_free(alseg_config* cfg) { delete cfg; }

int alseg_config_load_file(alseg_config* cfg, const char* path) {
    return run_guarded("load config", [&] {
        if (!cfg || !path) throw alseg::ConfigError("null argument");
        cfg->store.load_file(path);
    });
}

int alseg_config_set(alseg_config* cfg, const char* key, const char* value) {
    return run_guarded("set config", [&] {
        if (!cfg || !key || !value) throw alseg::ConfigError("null argument");
        cfg->store.set(key, value);
    });
}

int alseg_config_get(const alseg_config* cfg, const char* key, char* buf, size_t bufsize) {
    return run_guarded("get config", [&] {
        if (!key || !buf || bufsize == 0) throw alseg::ConfigError("null argument");
        const std::string& v = store_of(cfg).get(key);
        std::size_t n = v.size() < bufsize - 1 ? v.size() : bufsize - 1;
        std::memcpy(buf, v.data(), n);
        buf[n] = '\0';
    });
}

size_t alseg_config_key_count(void) { return ConfigStore::registry().size(); }

int alseg_config_key_info(size_t index, const char** name, const char** default_value,
                          const char** doc) {
    const auto& reg = ConfigStore::registry();
    if (index >= reg.size()) return ALSEG_ERR_CONFIG;
    if (name) *name = reg[index].name;
    if (default_value) *default_value = reg[index].default_value;
    if (doc) *doc = reg[index].doc;
    return ALSEG_OK;
}

const char* alseg_last_error(void) { return t_last_error.c_str(); }

int alseg_generate(const alseg_config* cfg) {
    return run_guarded("generate", [&] { alseg::cmd_generate(store_of(cfg)); });
}

int alseg_run(const alseg_config* cfg) {
    return run_guarded("run", [&] { alseg::cmd_run(store_of(cfg)); });
}

int alseg_compare(const alseg_config* cfg) {
    return run_guarded("compare", [&] { alseg::cmd_compare(store_of(cfg)); });
}

int alseg_sweep(const alseg_config* cfg) {
    return run_guarded("sweep", [&] { alseg::cmd_sweep(store_of(cfg)); });
}

int alseg_knn_inspect(const alseg_config* cfg) {
    return run_guarded("knn-inspect", [&] { alseg::cmd_knn_inspect(store_of(cfg)); });
}

int alseg_plot(const alseg_config* cfg) {
    return run_guarded("plot", [&] { alseg::cmd_plot(store_of(cfg)); });
}

const char* alseg_version(void) { return "0.1.0"; }

}  // extern "C"
