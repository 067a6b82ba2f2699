/* zenocoll - collision-driven Zeno dynamics in a two-ladder molecule.
 *
 * C API of the shared library.  All objects are opaque handles created and
 * destroyed here; every call returns a zc_status, with zc_last_error()
 * carrying the message of the most recent failure on this thread.
 */
#ifndef ZENOCOLL_H
#define ZENOCOLL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ZC_API __declspec(dllexport)
#else
#define ZC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zc_status {
  ZC_OK = 0,
  ZC_ERR_INVALID_ARGUMENT = 1,
  ZC_ERR_PARSE = 2,
  ZC_ERR_STIFFNESS = 3,
  ZC_ERR_IO = 4,
  ZC_ERR_UNKNOWN = 5,
} zc_status;

typedef struct zc_config zc_config;  /* experiment configuration */
typedef struct zc_series zc_series;  /* time grid + observable tracks */

ZC_API const char* zc_version(void);
/* Message of the last failing call on this thread ("" if none). */
ZC_API const char* zc_last_error(void);

/* --- configuration ------------------------------------------------------ */

/* Parses the flat key-value experiment format (see README). */
ZC_API zc_status zc_config_parse(const char* text, zc_config** out);
/* Loads a config file, or a result manifest (.json) to reproduce its run. */
ZC_API zc_status zc_config_load(const char* path, zc_config** out);
ZC_API void zc_config_free(zc_config* config);
/* Re-parses the document with one `key = value` line replaced/added. */
ZC_API zc_status zc_config_set(zc_config* config, const char* key,
                               const char* value);

/* Timescale-separation report (gap vs Rabi and collision rates, both energy
 * conventions).  Writes a human-readable report and sets *passed. */
ZC_API zc_status zc_validate(const zc_config* config, char* buffer,
                             size_t buffer_size, int* passed);

/* --- running ------------------------------------------------------------ */

/* Runs the configured engine in memory. */
ZC_API zc_status zc_run(const zc_config* config, zc_series** out);

/* Runs a configuration or a whole preset, writing one data file plus one
 * manifest per curve into out_dir.  particles_override <= 0 and
 * seed_override < 0 mean "keep the configured value"; format is "csv" or
 * "json".  The newline-separated list of written files is placed in
 * file_list (may be NULL). */
ZC_API zc_status zc_run_to_files(const zc_config* config, const char* out_dir,
                                 long particles_override, int64_t seed_override,
                                 const char* format, char* file_list,
                                 size_t file_list_size);
ZC_API zc_status zc_run_preset(const char* preset_id, const char* out_dir,
                               long particles_override, int64_t seed_override,
                               const char* format, char* file_list,
                               size_t file_list_size);

/* Closed-form curve generator over a t/T_R grid; x is the case-local scaling
 * parameter (ignored by curves that do not use one). */
ZC_API zc_status zc_curve(const char* name, double x, const double* t_tr,
                          size_t n, zc_series** out);

/* --- series access ------------------------------------------------------ */

ZC_API size_t zc_series_size(const zc_series* series);
/* Borrowed pointer, valid until zc_series_free. */
ZC_API const double* zc_series_time_tr(const zc_series* series);
/* track: "p_left" | "mu_left" | "sigma_left" | "coherence".  stderr_out is
 * set to NULL when the track carries no error bars. */
ZC_API zc_status zc_series_track(const zc_series* series, const char* track,
                                 const double** values,
                                 const double** stderr_out);
ZC_API zc_status zc_series_write_csv(const zc_series* series,
                                     const char* track, const char* path);
ZC_API void zc_series_free(zc_series* series);

/* --- comparison --------------------------------------------------------- */

/* Compares two result files against a tolerance spec such as
 * "maxabs=0.05,zmax=3,resample,window=0.1:1.5,rescale=x3,xa=32,xb=48,
 *  equilibrium=0.5,exponent".  Writes the text report and sets *passed. */
ZC_API zc_status zc_compare_files(const char* path_a, const char* path_b,
                                  const char* tolerance_spec, char* report,
                                  size_t report_size, int* passed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ZENOCOLL_H */
