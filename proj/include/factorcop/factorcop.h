#ifndef FACTORCOP_H
#define FACTORCOP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FCOP_API __declspec(dllexport)
#else
#define FCOP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Matrices are row-major: element (i, j) of an n x d matrix is at i * d + j. */

typedef enum fcop_status
{
  FCOP_OK = 0,
  FCOP_ERR_DOMAIN = 1,
  FCOP_ERR_PARAMETER = 2,
  FCOP_ERR_CONVERGENCE = 3,
  FCOP_ERR_DEGENERATE = 4,
  FCOP_ERR_DIMENSION = 5,
  FCOP_ERR_SINGULAR = 6,
  FCOP_ERR_CONFIG = 7,
  FCOP_ERR_IO = 8,
  FCOP_ERR_NULL_ARG = 9,
  FCOP_ERR_INTERNAL = 10
} fcop_status;

typedef enum fcop_family
{
  FCOP_INDEPENDENCE = 0,
  FCOP_GUMBEL = 1,
  FCOP_CLAYTON = 2
} fcop_family;

/* Message for the last failed call on this thread; empty after success. */
FCOP_API const char* fcop_last_error(void);
FCOP_API const char* fcop_status_name(fcop_status status);
FCOP_API const char* fcop_version(void);

FCOP_API fcop_status fcop_family_parse(const char* name, fcop_family* out);

/* Parametric bivariate copulas; v is the conditioning (latent) argument. */
FCOP_API fcop_status fcop_copula_cdf(fcop_family family, double theta, double u, double v, double* out);
FCOP_API fcop_status fcop_copula_density(fcop_family family, double theta, double u, double v, double* out);
FCOP_API fcop_status fcop_copula_h(fcop_family family, double theta, double u, double v, double* out);
FCOP_API fcop_status fcop_copula_h_inverse(fcop_family family, double theta, double w, double v, double* out);
FCOP_API fcop_status fcop_kendall_tau(fcop_family family, double theta, double* out);

/* One-factor model with d identical links. */
typedef struct fcop_model fcop_model;

FCOP_API fcop_status fcop_model_create(fcop_family family, double theta, int d, fcop_model** out);
FCOP_API void fcop_model_destroy(fcop_model* model);
/* u_out: n x d; latent_out: n values or NULL. */
FCOP_API fcop_status fcop_model_sample(const fcop_model* model, int n, uint64_t seed, double* u_out,
                                       double* latent_out);
/* Density of the first k variables at u[0..k); nodes <= 0 selects 50. */
FCOP_API fcop_status fcop_model_true_density(const fcop_model* model, const double* u, int k, int nodes,
                                             double* out);

/* Kernel-CDF pseudo-observations; cdf_const <= 0 selects the default 1.587. */
FCOP_API fcop_status fcop_pseudo_observations(const double* raw, int n, int d, double cdf_const, double* out);
/* Fails unless every entry is inside (0, 1); out (nullable) receives the clamped matrix. */
FCOP_API fcop_status fcop_validate_uniform(const double* u, int n, int d, double* out);

/* Any output pointer may be NULL. */
FCOP_API fcop_status fcop_proxy(const double* u, int n, int d, int auto_orient, double* z_bar, double* v_hat,
                                double* w_hat, size_t* ties);

typedef struct fcop_estimator_options
{
  double density_const;
  double k0_cap;
  double clip_lo;
  double clip_hi;
  int nodes_per_panel;
  double panels_per_bandwidth;
  int auto_orient;
} fcop_estimator_options;

FCOP_API void fcop_estimator_options_init(fcop_estimator_options* options);

/* Bivariate transformation kernel estimator. options may be NULL. */
typedef struct fcop_pair_fit fcop_pair_fit;

FCOP_API fcop_status fcop_pair_fit_create(const double* u_col, const double* v_col, int n,
                                          const fcop_estimator_options* options, fcop_pair_fit** out);
FCOP_API void fcop_pair_fit_destroy(fcop_pair_fit* fit);
FCOP_API fcop_status fcop_pair_fit_density(const fcop_pair_fit* fit, const double* u, const double* v, size_t m,
                                           double* out);
FCOP_API fcop_status fcop_pair_fit_integrate(const fcop_pair_fit* fit, int nodes, double* out);
FCOP_API fcop_status fcop_pair_fit_bandwidth(const fcop_pair_fit* fit, double* b1, double* b2, double* b3);

/* One-factor density estimator: proxy from all d columns, links for the first k. */
typedef struct fcop_factor_fit fcop_factor_fit;

FCOP_API fcop_status fcop_factor_fit_create(const double* u, int n, int d, int k,
                                            const fcop_estimator_options* options, fcop_factor_fit** out);
FCOP_API void fcop_factor_fit_destroy(fcop_factor_fit* fit);
/* points: m x k. */
FCOP_API fcop_status fcop_factor_fit_density(const fcop_factor_fit* fit, const double* points, size_t m,
                                             double* out);

/* Product-kernel density estimate on the copula scale; u: n x k. */
typedef struct fcop_naive_fit fcop_naive_fit;

FCOP_API fcop_status fcop_naive_fit_create(const double* u, int n, int k, const fcop_estimator_options* options,
                                           fcop_naive_fit** out);
FCOP_API void fcop_naive_fit_destroy(fcop_naive_fit* fit);
FCOP_API fcop_status fcop_naive_fit_density(const fcop_naive_fit* fit, const double* points, size_t m, double* out);

FCOP_API fcop_status fcop_rmsd(const double* est, const double* ref, size_t m, double* out);
/* d eigenvalues of the Spearman matrix of x (n x d), descending. */
FCOP_API fcop_status fcop_scree(const double* x, int n, int d, double* out);

/* Monte Carlo study driven by a JSON config. */
typedef struct fcop_study fcop_study;

FCOP_API fcop_status fcop_study_load(const char* path, fcop_study** out);
FCOP_API fcop_status fcop_study_parse(const char* json_text, fcop_study** out);
FCOP_API void fcop_study_destroy(fcop_study* study);
FCOP_API fcop_status fcop_study_set_output(fcop_study* study, const char* path);
FCOP_API size_t fcop_study_config_count(const fcop_study* study);
/* Runs every configuration and writes the CSV outputs. Progress and failed
   replications are reported on stderr when verbose is nonzero. */
FCOP_API fcop_status fcop_study_run(fcop_study* study, int verbose);
FCOP_API size_t fcop_study_failed(const fcop_study* study);
/* Summary CSV of the last run (header included); valid until the next run or destroy. */
FCOP_API const char* fcop_study_summary_csv(const fcop_study* study);

#ifdef __cplusplus
}
#endif

#endif
