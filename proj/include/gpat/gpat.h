/* GPAT — zero-shot ad hoc teamwork laboratory, C API.
 *
 * All entry points return a gpat_status; 0 is success. On failure the
 * thread-local message from gpat_last_error() describes the problem.
 * Handles are opaque and must be released with their matching _free call.
 */
#ifndef GPAT_GPAT_H_
#define GPAT_GPAT_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gpat_status {
  GPAT_OK = 0,
  GPAT_ERR_CONFIG = 2,   /* bad config / bad arguments */
  GPAT_ERR_MISSING = 3,  /* required artifact not found */
  GPAT_ERR_INTERNAL = 4, /* invariant violation */
} gpat_status;

typedef struct gpat_config gpat_config;   /* parsed experiment config */
typedef struct gpat_library gpat_library; /* opened policy library */

const char* gpat_version(void);

/* Last error message for the calling thread; empty string if none. */
const char* gpat_last_error(void);

/* ---- config ---- */
gpat_status gpat_config_load(const char* path, gpat_config** out);
gpat_status gpat_config_parse(const char* json_text, gpat_config** out);
/* Override the output directory after load (NULL keeps the config value). */
gpat_status gpat_config_set_output_dir(gpat_config* config, const char* dir);
void gpat_config_free(gpat_config* config);

/* ---- pipeline stages ---- */
gpat_status gpat_pretrain(const gpat_config* config);
gpat_status gpat_fit_dr(const gpat_config* config, int force);
/* methods_csv: comma-separated subset or NULL for the config roster.
 * render_mode: "none", "ascii" or "svg" (NULL means "none"). */
gpat_status gpat_eval(const gpat_config* config, const char* methods_csv,
                      const char* render_mode, int jobs);
/* All three stages in order (fit_dr skipped when already fitted). */
gpat_status gpat_run(const gpat_config* config, int jobs);

/* Render the results table for a results directory into buf (NUL-terminated,
 * truncated to buf_len). Returns the full length via *out_len when non-NULL. */
gpat_status gpat_report(const char* results_dir, char* buf, int64_t buf_len,
                        int64_t* out_len);

/* ---- library inspection ---- */
gpat_status gpat_library_open(const char* path, gpat_library** out);
gpat_status gpat_library_info(const gpat_library* lib, int64_t* n_entries,
                              int64_t* feature_dim, int64_t* n_actions,
                              int* dr_fitted);
void gpat_library_free(gpat_library* lib);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GPAT_GPAT_H_ */
