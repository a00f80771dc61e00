/*
 * C interface to the censtail library: tail-index estimation for randomly
 * right-censored Pareto-type data.
 *
 * All handles are opaque and owned by the caller; release them with the
 * matching *_destroy function. Every fallible call returns a censtail_status;
 * on failure censtail_last_error() describes the problem. The message is
 * thread-local and stays valid until the next failing call on that thread.
 */
#ifndef CENSTAIL_H
#define CENSTAIL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32) || defined(__CYGWIN__)
#  ifdef CENSTAIL_BUILDING
#    define CENSTAIL_API __declspec(dllexport)
#  else
#    define CENSTAIL_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__) && (__GNUC__ >= 4)
#  define CENSTAIL_API __attribute__((visibility("default")))
#else
#  define CENSTAIL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum censtail_status {
  CENSTAIL_OK = 0,
  CENSTAIL_ERR_EMPTY_SAMPLE = 1,
  CENSTAIL_ERR_NON_POSITIVE_OBSERVATION = 2,
  CENSTAIL_ERR_INVALID_INDICATOR = 3,
  CENSTAIL_ERR_PARSE = 4,
  CENSTAIL_ERR_IO = 5,
  CENSTAIL_ERR_INVALID_K = 6,
  CENSTAIL_ERR_DEGENERATE_P = 7,
  CENSTAIL_ERR_ZERO_SURVIVAL = 8,
  CENSTAIL_ERR_UNKNOWN_KERNEL = 9,
  CENSTAIL_ERR_KERNEL_AXIOM = 10,
  CENSTAIL_ERR_INVALID_SPEC = 11,
  CENSTAIL_ERR_DOMAIN = 12,
  CENSTAIL_ERR_CONFIG = 13,
  CENSTAIL_ERR_TOO_FEW_POINTS = 14,
  CENSTAIL_ERR_NULL_ARGUMENT = 15,
  CENSTAIL_ERR_INTERNAL = 16
} censtail_status;

typedef struct censtail_sample censtail_sample;
typedef struct censtail_kernel censtail_kernel;
typedef struct censtail_path censtail_path;
typedef struct censtail_simulation censtail_simulation;

typedef struct censtail_axiom_report {
  int monotone;   /* [A1] */
  int support;    /* [A2] */
  int normalized; /* [A3] */
  int bounded;    /* [A4] */
  double integral;
  double sup_density;
  double sup_g_prime;
  double sup_g_second;
} censtail_axiom_report;

CENSTAIL_API const char* censtail_status_string(censtail_status status);
CENSTAIL_API const char* censtail_last_error(void);
CENSTAIL_API const char* censtail_version(void);

/* Samples. Stored sorted (ties: uncensored first, then input order). */
CENSTAIL_API censtail_status censtail_sample_create(const double* z, const int* delta, size_t n,
                                                    censtail_sample** out);
/* Two-column CSV "value,delta" with an optional header line. */
CENSTAIL_API censtail_status censtail_sample_read_csv(const char* path, censtail_sample** out);
CENSTAIL_API void censtail_sample_destroy(censtail_sample* sample);
CENSTAIL_API size_t censtail_sample_size(const censtail_sample* sample);
/* Copies the order statistics and concomitants into arrays of length n. */
CENSTAIL_API censtail_status censtail_sample_sorted(const censtail_sample* sample, double* z_out,
                                                    int* delta_out);
CENSTAIL_API censtail_status censtail_sample_kaplan_meier(const censtail_sample* sample, double x,
                                                          double* out);
CENSTAIL_API censtail_status censtail_sample_nelson_aalen(const censtail_sample* sample, double z,
                                                          double* out);
/* CSV with columns z,km_survival,na_survival. */
CENSTAIL_API censtail_status censtail_sample_write_curves(const censtail_sample* sample,
                                                          const char* path);

/* Tail-index estimators; k is the number of top order statistics. */
CENSTAIL_API censtail_status censtail_hill(const censtail_sample* s, size_t k, double* out);
CENSTAIL_API censtail_status censtail_p_hat(const censtail_sample* s, size_t k, double* out);
CENSTAIL_API censtail_status censtail_efg(const censtail_sample* s, size_t k, double* out);
CENSTAIL_API censtail_status censtail_worms(const censtail_sample* s, size_t k, double* out);
CENSTAIL_API censtail_status censtail_mns(const censtail_sample* s, size_t k, double* out);
CENSTAIL_API censtail_status censtail_kernel_estimate(const censtail_sample* s, size_t k,
                                                      const censtail_kernel* kernel, double* out);

/* Kernels: "indicator", "biweight", "triweight" (or K1, K2, K3). */
CENSTAIL_API censtail_status censtail_kernel_builtin(const char* name, censtail_kernel** out);
CENSTAIL_API void censtail_kernel_destroy(censtail_kernel* kernel);
CENSTAIL_API const char* censtail_kernel_name(const censtail_kernel* kernel);
CENSTAIL_API censtail_status censtail_kernel_check(const censtail_kernel* kernel, double tol,
                                                   censtail_axiom_report* out);
/* Asymptotic mean mu_K and variance sigma^2_K; requires 1/2 < p <= 1, tau1 <= 0. */
CENSTAIL_API censtail_status censtail_kernel_moments(const censtail_kernel* kernel, double p,
                                                     double gamma1, double tau1, double lambda,
                                                     double* mu, double* sigma2);

/* Estimate paths. estimators and kernels are comma-separated lists, e.g.
 * "hill,p_hat,efg,worms,mns,kernel" and "biweight,triweight". */
CENSTAIL_API censtail_status censtail_path_compute(const censtail_sample* sample, const size_t* k,
                                                   size_t nk, const char* estimators,
                                                   const char* kernels, censtail_path** out);
CENSTAIL_API void censtail_path_destroy(censtail_path* path);
CENSTAIL_API size_t censtail_path_rows(const censtail_path* path);
CENSTAIL_API size_t censtail_path_columns(const censtail_path* path);
CENSTAIL_API const char* censtail_path_column_name(const censtail_path* path, size_t column);
CENSTAIL_API size_t censtail_path_k(const censtail_path* path, size_t row);
/* *defined is set to 0 for undefined cells (then *out is untouched). */
CENSTAIL_API censtail_status censtail_path_value(const censtail_path* path, size_t row,
                                                 size_t column, double* out, int* defined);
/* path == NULL writes to stdout. Undefined cells are written as NA. */
CENSTAIL_API censtail_status censtail_path_write_csv(const censtail_path* path, const char* file);

/* Monte Carlo. threads == 0 keeps the config's worker hint; seed may be NULL. */
CENSTAIL_API censtail_status censtail_simulation_run_json(const char* config_json,
                                                          unsigned threads, const uint64_t* seed,
                                                          censtail_simulation** out);
CENSTAIL_API void censtail_simulation_destroy(censtail_simulation* sim);
/* Columns estimator,k,mean,bias,mse,defined_count. file == NULL writes to stdout. */
CENSTAIL_API censtail_status censtail_simulation_write_csv(const censtail_simulation* sim,
                                                           const char* file);
CENSTAIL_API censtail_status censtail_simulation_write_json(const censtail_simulation* sim,
                                                            const char* file);

#ifdef __cplusplus
}
#endif

#endif /* CENSTAIL_H */
