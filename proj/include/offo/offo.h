/* C interface to the offo optimizer library.
 *
 * All functions return an offo_status; on failure offo_last_error() holds a
 * message for the calling thread. Handles are opaque and owned by the
 * caller, who releases them with the matching *_free function. Strings
 * returned through char** are released with offo_string_free. */
#ifndef OFFO_OFFO_H
#define OFFO_OFFO_H

#include <stddef.h>
#include <stdint.h>

#if defined(OFFO_BUILDING)
#define OFFO_API __attribute__((visibility("default")))
#else
#define OFFO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum offo_status {
  OFFO_OK = 0,
  OFFO_ERR_INVALID_PARAMETER = 1,
  OFFO_ERR_DIMENSION_MISMATCH = 2,
  OFFO_ERR_NON_FINITE_VALUE = 3,
  OFFO_ERR_NON_FINITE_INPUT = 4,
  OFFO_ERR_UNKNOWN_PROBLEM = 5,
  OFFO_ERR_CONFIG_MISMATCH = 6,
  OFFO_ERR_OUT_OF_DOMAIN = 7,
  OFFO_ERR_MISSING_REFERENCE = 8,
  OFFO_ERR_MISSING_CONSTANTS = 9,
  OFFO_ERR_EMPTY_RESULTS = 10,
  OFFO_ERR_IO = 11,
  OFFO_ERR_INTERNAL = 99
} offo_status;

OFFO_API const char* offo_status_string(offo_status status);
OFFO_API const char* offo_last_error(void);
OFFO_API void offo_string_free(char* s);

/* ---- problems ---------------------------------------------------------- */

typedef struct offo_problem offo_problem;

enum { OFFO_WANT_VALUE = 1, OFFO_WANT_GRADIENT = 2, OFFO_WANT_HESSIAN = 4 };

OFFO_API size_t offo_suite_size(void);
OFFO_API const char* offo_suite_name(size_t index);
/* JSON manifest of the whole suite. */
OFFO_API offo_status offo_suite_manifest(char** json);

OFFO_API offo_status offo_problem_load(const char* name, offo_problem** out);
OFFO_API void offo_problem_free(offo_problem* problem);
OFFO_API size_t offo_problem_dim(const offo_problem* problem);
OFFO_API const char* offo_problem_name(const offo_problem* problem);
OFFO_API offo_status offo_problem_x0(const offo_problem* problem, double* x0,
                                     size_t n);
/* Adds multiplicative noise y (1 + level xi) to later evaluations. */
OFFO_API offo_status offo_problem_set_noise(offo_problem* problem, double level,
                                            uint64_t seed);
/* Evaluates at x with the given query index. Outputs not requested in
 * `want` may be NULL; the Hessian is written column-major, n * n entries. */
OFFO_API offo_status offo_problem_evaluate(const offo_problem* problem,
                                           const double* x, size_t n,
                                           int want, uint64_t query, double* f,
                                           double* g, double* H);

/* ---- single runs ------------------------------------------------------- */

typedef struct offo_run offo_run;

typedef struct offo_run_options {
  const char* variant; /* adag1, adagi1, ..., sdba */
  const char* model;   /* NULL: variant default; none|bb|lbfgs3|exact */
  const char* norm;    /* NULL: variant default; inf|2 */
  double eps;
  long max_iter;
  double noise;
  uint64_t seed;
  int keep_trace;
  int instrument;
} offo_run_options;

OFFO_API void offo_run_options_default(offo_run_options* options);
OFFO_API offo_status offo_solve(const offo_problem* problem,
                                const offo_run_options* options,
                                offo_run** out);
OFFO_API void offo_run_free(offo_run* run);
OFFO_API const char* offo_run_status(const offo_run* run);
OFFO_API long offo_run_iterations(const offo_run* run);
OFFO_API long offo_run_value_calls(const offo_run* run);
OFFO_API long offo_run_violations(const offo_run* run);
OFFO_API double offo_run_final_gnorm(const offo_run* run);
/* NaN when the final value overflowed. */
OFFO_API double offo_run_final_f(const offo_run* run);
OFFO_API offo_status offo_run_x(const offo_run* run, double* x, size_t n);
OFFO_API offo_status offo_run_json(const offo_run* run, int with_trace,
                                   char** json);

/* ---- benchmark --------------------------------------------------------- */

typedef struct offo_bench offo_bench;

typedef struct offo_bench_options {
  const char* suite;        /* "all" or comma-separated names */
  const char* variants;     /* comma-separated tags */
  const char* noise_levels; /* comma-separated fractions */
  int reps;
  uint64_t seed;
  long max_iter;
  int threads;
  int log_pi; /* nonzero: log-axis profile area */
} offo_bench_options;

OFFO_API void offo_bench_options_default(offo_bench_options* options);
OFFO_API offo_status offo_bench_run(const offo_bench_options* options,
                                    offo_bench** out);
OFFO_API void offo_bench_free(offo_bench* bench);
OFFO_API size_t offo_bench_cells(const offo_bench* bench);
OFFO_API long offo_bench_violations(const offo_bench* bench);
OFFO_API offo_status offo_bench_write_results(const offo_bench* bench,
                                              const char* path);
OFFO_API offo_status offo_bench_write_stats(const offo_bench* bench,
                                            const char* path);
/* pi and rho of one variant at one noise level. */
OFFO_API offo_status offo_bench_stat(const offo_bench* bench,
                                     const char* variant, double noise_level,
                                     double* pi, double* rho);

/* ---- slow-convergence examples and theory ------------------------------ */

typedef struct offo_sharpness_options {
  const char* kind; /* sharp1 | sharp2 */
  double mu, eta, varsigma;
  double nu, omega;
  long iters;
  int grid;               /* points per decade, 0: no grid */
  const char* knots_path; /* may be NULL */
  const char* grid_path;  /* may be NULL */
  int shift_f0;
} offo_sharpness_options;

typedef struct offo_sharpness_report {
  long compared;
  double max_knot_deviation;
  double max_gradient_deviation;
  double max_decay_deviation;
  int hermite_ok;
} offo_sharpness_report;

OFFO_API void offo_sharpness_options_default(offo_sharpness_options* options);
OFFO_API offo_status offo_sharpness(const offo_sharpness_options* options,
                                    offo_sharpness_report* report);

OFFO_API offo_status offo_theory_check(long iterations, char** json,
                                       long* violations);

OFFO_API offo_status offo_lambert_wm1(double y, double* w);
OFFO_API offo_status offo_zeta(double s, double* value);

#ifdef __cplusplus
}
#endif

#endif /* OFFO_OFFO_H */
