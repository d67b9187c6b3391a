/* C interface to the kdim core: opaque handles, integer status codes.
 * All functions return KDIM_OK (0) on success; on failure the return
 * value is a status code and kdim_last_error() describes the problem
 * (thread-local). Strings returned through char** are owned by the
 * caller and released with kdim_string_free. */
#ifndef KDIM_KDIM_H_
#define KDIM_KDIM_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define KDIM_OK 0
#define KDIM_EINVAL 1 /* bad argument or malformed input */
#define KDIM_EFAIL 2  /* computation failed */

typedef struct kdim_group kdim_group;
typedef struct kdim_cloud kdim_cloud;

const char* kdim_last_error(void);
void kdim_string_free(char* s);

/* --- groups ------------------------------------------------------ */

/* Group-spec text: header "generators m mode", then m matrix lines. */
int kdim_group_parse(const char* text, kdim_group** out);
/* Built-ins: cyclic-parabolic, cyclic-loxodromic, modular, schottky4. */
int kdim_group_family(const char* name, kdim_group** out);
int kdim_group_serialize(const kdim_group* g, char** out);
void kdim_group_free(kdim_group* g);

/* --- clouds ------------------------------------------------------ */

/* Built-ins: snowflake (beta, depth), cantor (depth), one-over-n (n),
 * cyclic-loxodromic (elementary two-point set). Unused parameters are
 * ignored; pass 0 for defaults. */
int kdim_cloud_family(const char* name, double beta, int depth, int n,
                      kdim_cloud** out);
int kdim_cloud_from_csv(const char* text, kdim_cloud** out);
/* method: 0 orbit accumulation, 1 word fixed points. */
int kdim_cloud_limit_set(const kdim_group* g, size_t budget, int method,
                         kdim_cloud** out);
int kdim_cloud_to_csv(const kdim_cloud* c, uint64_t config_hash, char** out);
int kdim_cloud_to_svg(const kdim_cloud* c, char** out);
size_t kdim_cloud_size(const kdim_cloud* c);
int kdim_cloud_point(const kdim_cloud* c, size_t i, double* x, double* y);
int kdim_cloud_is_elementary(const kdim_cloud* c);
void kdim_cloud_free(kdim_cloud* c);

/* --- estimators -------------------------------------------------- */

typedef struct {
  double value;
  double stderr_;
  double window_min;
  double window_max;
  int truncated;
  int interpolated;
} kdim_estimate;

/* Box-counting slope. eps_min/eps_max <= 0 selects the default window
 * (drop the two coarsest and two finest usable levels). */
int kdim_estimate_mdim(const kdim_cloud* c, int min_level, int max_level,
                       double eps_min, double eps_max, kdim_estimate* out);
/* Whitney-decomposition slope over [fit_min, fit_max]. */
int kdim_estimate_kappa(const kdim_cloud* c, int max_level, int fit_min,
                        int fit_max, kdim_estimate* out);
/* Poincare exponent from orbit shells at radii r_min, r_min+r_step, ...,
 * r_max. */
int kdim_estimate_delta(const kdim_group* g, double r_min, double r_max,
                        double r_step, size_t budget, kdim_estimate* out);
int kdim_estimate_beta0(const kdim_cloud* c, int min_level, int max_level,
                        double* beta0, size_t* square_count);
int kdim_estimate_tsp_sum(const kdim_cloud* c, int min_level, int max_level,
                          double* total);
int kdim_perfectness(const kdim_cloud* c, const double* scales,
                     size_t n_scales, double* eps_hat);

/* --- acceptance harness ------------------------------------------ */

/* Runs the full acceptance suite. corrupt may be NULL or a check id
 * (test hook). all_pass is 1 iff no check failed. */
int kdim_verify(double budget_scale, uint64_t seed, const char* corrupt,
                char** report_text, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif /* KDIM_KDIM_H_ */
