/* alseg - active-learning segmentation experiment toolkit, C API.
 *
 * The library is handle-based: build an alseg_config, fill it from files
 * and key/value pairs, then hand it to a command. Every command returns
 * ALSEG_OK (0) on success, ALSEG_ERR_RUNTIME (1) on runtime failure or
 * ALSEG_ERR_CONFIG (2) on configuration errors; alseg_last_error() holds a
 * message for the calling thread after a failure. These codes double as the
 * CLI exit codes.
 */
#ifndef ALSEG_H
#define ALSEG_H

#include <stddef.h>

#if defined _WIN32 || defined __CYGWIN__
#define ALSEG_API __declspec(dllexport)
#else
#define ALSEG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define ALSEG_OK 0
#define ALSEG_ERR_RUNTIME 1
#define ALSEG_ERR_CONFIG 2

typedef struct alseg_config alseg_config;

/* Configuration handle pre-filled with the registry defaults. Returns NULL
 * only on allocation failure. */
ALSEG_API alseg_config* alseg_config_new(void);
ALSEG_API void alseg_config_free(alseg_config* cfg);

/* Overlays `key = value` lines from a file ('#' comments allowed). */
ALSEG_API int alseg_config_load_file(alseg_config* cfg, const char* path);

/* Sets one key. Unknown keys are rejected and named in the error. */
ALSEG_API int alseg_config_set(alseg_config* cfg, const char* key, const char* value);

/* Copies the current value of a key into buf (NUL-terminated, truncating).
 * Returns ALSEG_ERR_CONFIG for unknown keys. */
ALSEG_API int alseg_config_get(const alseg_config* cfg, const char* key, char* buf,
                               size_t bufsize);

/* Key registry, for --help style listings. Pointers are static storage. */
ALSEG_API size_t alseg_config_key_count(void);
ALSEG_API int alseg_config_key_info(size_t index, const char** name,
                                    const char** default_value, const char** doc);

/* Message from the most recent failing call on this thread ("" if none). */
ALSEG_API const char* alseg_last_error(void);

/* Commands. Each reads everything it needs from the config handle:
 *   generate     writes a synthetic dataset under key `dataset`
 *   run          runs `replications` AL sessions of `method`, writes
 *                rounds.csv / session.json / model per session plus
 *                per-method aggregates under `out`
 *   compare      aggregates methods found under `out` into CSV + a table
 *   sweep        one session per value of `param` over `values`
 *   knn_inspect  neighbor report for sample `id`
 *   plot         SVG Dice-curve chart across methods
 */
ALSEG_API int alseg_generate(const alseg_config* cfg);
ALSEG_API int alseg_run(const alseg_config* cfg);
ALSEG_API int alseg_compare(const alseg_config* cfg);
ALSEG_API int alseg_sweep(const alseg_config* cfg);
ALSEG_API int alseg_knn_inspect(const alseg_config* cfg);
ALSEG_API int alseg_plot(const alseg_config* cfg);

ALSEG_API const char* alseg_version(void);

#ifdef __cplusplus
}
#endif

#endif /* ALSEG_H */
