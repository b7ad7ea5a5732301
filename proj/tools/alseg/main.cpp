// alseg command-line tool. Talks to the library exclusively through the
// C API in alseg.h; exit codes are the library's error codes
// (0 ok, 1 runtime, 2 config).

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "alseg.h"

namespace {

void print_usage() {
    std::printf(
        "usage: alseg <command> [--key value]... [--config FILE]\n"
        "\n"
        "commands:\n"
        "  generate     write a synthetic dataset to --dataset\n"
        "  run          run active-learning sessions (one method, all replications)\n"
        "  compare      aggregate AUC across methods under --out\n"
        "  sweep        one session per value of --param over --values\n"
        "  knn-inspect  neighbor report for sample --id\n"
        "  plot         SVG Dice-curve chart across methods\n"
        "\n"
        "Configuration: registry defaults, then --config files (in order), then\n"
        "the ALSEG_SEED environment variable (seed only), then flags. Flags use\n"
        "the key names below; '-' and '_' are interchangeable.\n"
        "\n"
        "keys:\n");
    size_t n = alseg_config_key_count();
    for (size_t i = 0; i < n; ++i) {
        const char *name = nullptr, *def = nullptr, *doc = nullptr;
        if (alseg_config_key_info(i, &name, &def, &doc) != ALSEG_OK) continue;
        std::printf("  --%-24s %s (default: %s)\n", name, doc,
                    def && def[0] ? def : "\"\"");
    }
}

std::string normalize_key(const char* flag) {
    std::string key(flag + 2);  // strip leading --
    for (char& c : key)
        if (c == '-') c = '_';
    return key;
}

int fail(int code) {
    std::fprintf(stderr, "alseg: %s\n", alseg_last_error());
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        print_usage();
        return ALSEG_ERR_CONFIG;
    }
    std::string command = argv[1];
    if (command == "--help" || command == "-h" || command == "help") {
        print_usage();
        return ALSEG_OK;
    }

    struct Flag {
        std::string key, value;
    };
    std::vector<Flag> flags;
    std::vector<std::string> config_files;
    for (int i = 2; i < argc; ++i) {
        if (std::strncmp(argv[i], "--", 2) != 0) {
            std::fprintf(stderr, "alseg: expected a --key, got '%s'\n", argv[i]);
            return ALSEG_ERR_CONFIG;
        }
        std::string key = normalize_key(argv[i]);
        if (key == "help") {
            print_usage();
            return ALSEG_OK;
        }
        if (i + 1 >= argc) {
            std::fprintf(stderr, "alseg: flag --%s needs a value\n", key.c_str());
            return ALSEG_ERR_CONFIG;
        }
        std::string value = argv[++i];
        if (key == "config")
            config_files.push_back(value);
        else
            flags.push_back({key, value});
    }

    alseg_config* cfg = alseg_config_new();
    if (!cfg) {
        std::fprintf(stderr, "alseg: out of memory\n");
        return ALSEG_ERR_RUNTIME;
    }

    int rc = ALSEG_OK;
    for (const auto& file : config_files)
        if ((rc = alseg_config_load_file(cfg, file.c_str())) != ALSEG_OK) break;

    if (rc == ALSEG_OK) {
        if (const char* env_seed = std::getenv("ALSEG_SEED"); env_seed && env_seed[0])
            rc = alseg_config_set(cfg, "seed", env_seed);
    }

    if (rc == ALSEG_OK)
        for (const auto& f : flags)
            if ((rc = alseg_config_set(cfg, f.key.c_str(), f.value.c_str())) != ALSEG_OK)
                break;

    if (rc != ALSEG_OK) {
        alseg_config_free(cfg);
        return fail(rc);
    }

    if (command == "generate")
        rc = alseg_generate(cfg);
    else if (command == "run")
        rc = alseg_run(cfg);
    else if (command == "compare")
        rc = alseg_compare(cfg);
    else if (command == "sweep")
        rc = alseg_sweep(cfg);
    else if (command == "knn-inspect")
        rc = alseg_knn_inspect(cfg);
    else if (command == "plot")
        rc = alseg_plot(cfg);
    else {
        std::fprintf(stderr, "alseg: unknown command '%s' (try --help)\n", command.c_str());
        alseg_config_free(cfg);
        return ALSEG_ERR_CONFIG;
    }

    alseg_config_free(cfg);
    if (rc != ALSEG_OK) return fail(rc);
    return ALSEG_OK;
}
