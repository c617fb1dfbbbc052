/* C interface to the one-step estimation library. All functions return a
 * status code; onestep_last_error() describes the most recent failure on the
 * calling thread. Handles are opaque and freed with their _free function. */
#ifndef ONESTEP_CAPI_H
#define ONESTEP_CAPI_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ONESTEP_API __declspec(dllexport)
#else
#define ONESTEP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum onestep_status {
  ONESTEP_OK = 0,
  ONESTEP_ERR_INVALID_ARGUMENT = 1,
  ONESTEP_ERR_SHAPE = 2,
  ONESTEP_ERR_DOMAIN = 3,
  ONESTEP_ERR_CONFIG = 4,
  ONESTEP_ERR_IO = 5,
  ONESTEP_ERR_INTERNAL = 6
} onestep_status;

typedef struct onestep_density onestep_density;   /* density on a uniform grid */
typedef struct onestep_discrete onestep_discrete; /* pmf over numeric atoms */
typedef struct onestep_samples onestep_samples;   /* ordered draws */

typedef struct onestep_report {
  double estimate;
  double plug_in;
  double correction;
  double std_error;
  double ci_low;
  double ci_high;
  uint64_t n;
  int split;
} onestep_report;

typedef struct onestep_kde_config {
  int rule;      /* 0 fixed, 1 reference, 2 undersmoothed */
  double scale;  /* <= 0 selects the rule default */
  double fixed_h;
} onestep_kde_config;

ONESTEP_API const char* onestep_version(void);
ONESTEP_API const char* onestep_last_error(void);
ONESTEP_API void onestep_string_free(char* s);

/* --- densities on a uniform grid ------------------------------------- */

ONESTEP_API onestep_status onestep_density_create(double lower, double upper,
                                                  const double* heights,
                                                  size_t m,
                                                  onestep_density** out);
ONESTEP_API onestep_status onestep_density_preset(const char* name,
                                                  double lower, double upper,
                                                  size_t m,
                                                  onestep_density** out);
ONESTEP_API void onestep_density_free(onestep_density* d);
ONESTEP_API onestep_status onestep_density_size(const onestep_density* d,
                                                size_t* out);
ONESTEP_API onestep_status onestep_density_values(const onestep_density* d,
                                                  double* out, size_t len);
ONESTEP_API onestep_status onestep_density_value_at(const onestep_density* d,
                                                    double z, double* out);
ONESTEP_API onestep_status onestep_density_mix(const onestep_density* p,
                                               const onestep_density* ptilde,
                                               double eps,
                                               onestep_density** out);
ONESTEP_API onestep_status onestep_density_l2_distance(const onestep_density* a,
                                                       const onestep_density* b,
                                                       double* out);

/* --- discrete distributions ------------------------------------------ */

ONESTEP_API onestep_status onestep_discrete_create(const double* atoms,
                                                   const double* masses,
                                                   size_t k,
                                                   onestep_discrete** out);
ONESTEP_API void onestep_discrete_free(onestep_discrete* d);
ONESTEP_API onestep_status onestep_discrete_mix(const onestep_discrete* p,
                                                const onestep_discrete* ptilde,
                                                double eps,
                                                onestep_discrete** out);
ONESTEP_API onestep_status onestep_discrete_l2_distance(
    const onestep_discrete* a, const onestep_discrete* b, double* out);

/* --- functionals: "isd" or "mean" ------------------------------------ */

ONESTEP_API onestep_status onestep_evaluate(const char* functional,
                                            const onestep_density* g,
                                            double* out);
ONESTEP_API onestep_status onestep_evaluate_discrete(const char* functional,
                                                     const onestep_discrete* g,
                                                     double* out);
ONESTEP_API onestep_status onestep_influence(const char* functional, double z,
                                             const onestep_density* g,
                                             double* out);
ONESTEP_API onestep_status onestep_influence_discrete(const char* functional,
                                                      double atom,
                                                      const onestep_discrete* g,
                                                      double* out);

/* --- path quantities (target first, initial estimate second) ---------- */

ONESTEP_API onestep_status onestep_pathwise_derivative(
    const char* functional, const onestep_density* target,
    const onestep_density* initial, double* out);
ONESTEP_API onestep_status onestep_one_step_intercept(
    const char* functional, const onestep_density* target,
    const onestep_density* initial, double* out);
ONESTEP_API onestep_status onestep_exact_r2(const char* functional,
                                            const onestep_density* target,
                                            const onestep_density* initial,
                                            double* out);

/* --- sampling and estimation ------------------------------------------ */

ONESTEP_API onestep_status onestep_sample(const onestep_density* p, size_t n,
                                          uint64_t seed, onestep_samples** out);
ONESTEP_API onestep_status onestep_samples_create(const double* points,
                                                  size_t n,
                                                  onestep_samples** out);
ONESTEP_API void onestep_samples_free(onestep_samples* s);
ONESTEP_API onestep_status onestep_samples_size(const onestep_samples* s,
                                                size_t* out);
ONESTEP_API onestep_status onestep_samples_values(const onestep_samples* s,
                                                  double* out, size_t len);

ONESTEP_API onestep_status onestep_kde_fit(const onestep_samples* samples,
                                           double lower, double upper, size_t m,
                                           const onestep_kde_config* config,
                                           onestep_density** out);
ONESTEP_API onestep_status onestep_one_step(const char* functional,
                                            const onestep_density* ptilde,
                                            const onestep_samples* eval_samples,
                                            onestep_report* out);
ONESTEP_API onestep_status onestep_split_one_step(
    const char* functional, const onestep_samples* samples, double lower,
    double upper, size_t m, const onestep_kde_config* config,
    uint64_t split_seed, onestep_report* out);
ONESTEP_API onestep_status onestep_efficiency_bound(const char* functional,
                                                    const onestep_density* p,
                                                    uint64_t n, double* out);

ONESTEP_API onestep_status onestep_loglog_slope(const double* xs,
                                                const double* ys, size_t n,
                                                double* out);

/* --- command front end -------------------------------------------------
 * command: path | multipath | simplex | simulate | rates
 * config_path / out_dir / functional may be NULL; seed applies when
 * has_seed is nonzero. On success *summary_out (if non-NULL) receives a
 * malloc'd report string; release it with onestep_string_free. */
ONESTEP_API onestep_status onestep_run_command(const char* command,
                                               const char* config_path,
                                               const char* out_dir,
                                               const char* functional,
                                               long long seed, int has_seed,
                                               char** summary_out);

#ifdef __cplusplus
}
#endif

#endif /* ONESTEP_CAPI_H */
