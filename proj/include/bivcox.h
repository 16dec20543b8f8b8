/* C interface to the bivcox library.
 *
 * All functions return BIVCOX_OK (0) on success or a nonzero error code;
 * bivcox_last_error() gives a thread-local message for the most recent
 * failure on the calling thread. Objects returned through out-pointers are
 * owned by the caller and released with the matching *_free function.
 * Handles are immutable after creation except bivcox_rng, which advances as
 * it is consumed; a handle may be shared across threads only if immutable.
 */
#ifndef BIVCOX_H
#define BIVCOX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BIVCOX_API __declspec(dllexport)
#else
#define BIVCOX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define BIVCOX_OK 0
#define BIVCOX_ERR_INVALID_ARGUMENT 1
#define BIVCOX_ERR_DOMAIN 2
#define BIVCOX_ERR_NUMERIC 3
#define BIVCOX_ERR_IO 4
#define BIVCOX_ERR_INTERNAL 5

typedef struct bivcox_copula bivcox_copula;
typedef struct bivcox_pickands bivcox_pickands;
typedef struct bivcox_rng bivcox_rng;

BIVCOX_API const char* bivcox_version(void);
BIVCOX_API const char* bivcox_last_error(void);
BIVCOX_API void bivcox_string_free(char* s);

/* ---- copulas ----------------------------------------------------------- */

/* family: "product", "clayton", "gumbel", "amh", "gumbel-barnett";
 * theta is ignored for "product" */
BIVCOX_API int bivcox_copula_family(const char* family, double theta,
                                    bivcox_copula** out);

BIVCOX_API int bivcox_copula_extreme_value(const bivcox_pickands* a,
                                           bivcox_copula** out);

/* copula of the model under covariate z, generic propagation formula */
BIVCOX_API int bivcox_copula_propagate(const bivcox_copula* baseline,
                                       const double* alpha_coefs,
                                       const double* beta_coefs, size_t coef_len,
                                       const double* z, size_t z_len,
                                       bivcox_copula** out);

/* structured propagation of an archimedean family baseline */
BIVCOX_API int bivcox_copula_propagate_archimedean(const char* family, double theta,
                                                   const double* alpha_coefs,
                                                   const double* beta_coefs,
                                                   size_t coef_len, const double* z,
                                                   size_t z_len, bivcox_copula** out);

BIVCOX_API int bivcox_copula_cdf(const bivcox_copula* c, double u, double v,
                                 double* out);
BIVCOX_API int bivcox_copula_density(const bivcox_copula* c, double u, double v,
                                     double* out);
BIVCOX_API int bivcox_copula_spearman_rho(const bivcox_copula* c, double* out);
BIVCOX_API void bivcox_copula_free(bivcox_copula* c);

/* ---- dependence functions ---------------------------------------------- */

BIVCOX_API int bivcox_pickands_one(bivcox_pickands** out);
BIVCOX_API int bivcox_pickands_gumbel(double theta, bivcox_pickands** out);
BIVCOX_API int bivcox_pickands_asymmetric_logistic(double alpha, double beta,
                                                   double theta,
                                                   bivcox_pickands** out);
BIVCOX_API int bivcox_pickands_propagate(const bivcox_pickands* a,
                                         const double* alpha_coefs,
                                         const double* beta_coefs, size_t coef_len,
                                         const double* z, size_t z_len,
                                         bivcox_pickands** out);
BIVCOX_API int bivcox_pickands_transition(const bivcox_pickands* b_z,
                                          const double* alpha_coefs,
                                          const double* beta_coefs, size_t coef_len,
                                          const double* z, const double* z_prime,
                                          size_t z_len, bivcox_pickands** out);
BIVCOX_API int bivcox_pickands_eval(const bivcox_pickands* a, double s, double* out);
BIVCOX_API void bivcox_pickands_free(bivcox_pickands* a);

/* ---- verification ------------------------------------------------------ */

/* checks: comma-separated list from "axioms,tp2,pqd,min-id" (empty = all);
 * returns a JSON array of reports in *json_out (release with
 * bivcox_string_free) */
BIVCOX_API int bivcox_verify_copula(const bivcox_copula* c, const char* checks,
                                    int resolution, double margin, char** json_out);
BIVCOX_API int bivcox_verify_pickands(const bivcox_pickands* a, int resolution,
                                      char** json_out);

/* ---- sampling ---------------------------------------------------------- */

BIVCOX_API int bivcox_rng_new(uint64_t seed, uint64_t stream, bivcox_rng** out);
BIVCOX_API void bivcox_rng_free(bivcox_rng* rng);

BIVCOX_API int bivcox_sample_copula(const bivcox_copula* c, size_t n,
                                    bivcox_rng* rng, double* u, double* v);
BIVCOX_API int bivcox_sample_positive_stable(double index, size_t n, bivcox_rng* rng,
                                             double* out);
BIVCOX_API int bivcox_sample_gumbel_frailty(double theta, size_t n, bivcox_rng* rng,
                                            double* u, double* v);
BIVCOX_API int bivcox_sample_khoudraji(const bivcox_copula* c1,
                                       const bivcox_copula* c2, double kappa,
                                       double eta, size_t n, bivcox_rng* rng,
                                       double* u, double* v);

/* lifetimes under the model at covariate z with Weibull baselines */
BIVCOX_API int bivcox_sample_model(const char* family, double theta, double x_shape,
                                   double x_scale, double y_shape, double y_scale,
                                   const double* alpha_coefs, const double* beta_coefs,
                                   size_t coef_len, const double* z, size_t z_len,
                                   size_t n, bivcox_rng* rng, double* x, double* y);

/* ---- estimation -------------------------------------------------------- */

BIVCOX_API int bivcox_kendall_tau(const double* x, const double* y, size_t n,
                                  double* out);
BIVCOX_API int bivcox_theta_from_tau(const char* family, double tau, double* out);
BIVCOX_API int bivcox_spearman_rho_empirical(const double* x, const double* y,
                                             size_t n, double* out);

/* covariates are row-major n x d; coefs must hold d doubles */
BIVCOX_API int bivcox_cox_fit(const double* times, const double* covariates, size_t n,
                              size_t d, int max_iter, double tol, double* coefs,
                              int* converged, int* iterations, double* loglik);

/* scheme: "grid" (plain grid average), "grid-dc" (dC-weighted grid) or "mc" */
BIVCOX_API int bivcox_mean_relative_error(const bivcox_copula* truth,
                                          const bivcox_copula* estimate,
                                          const char* scheme, uint64_t mc_seed,
                                          double* out);

/* ---- experiments ------------------------------------------------------- */

/* config_json: experiment configuration document; runs the experiment,
 * writes its outputs, and returns the report JSON in *report_json_out
 * (release with bivcox_string_free) */
BIVCOX_API int bivcox_experiment_run(const char* config_json, char** report_json_out);

#ifdef __cplusplus
}
#endif

#endif /* BIVCOX_H */
