// Copyright 2026 The carnotfreq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the carnotfreq library. Every object is an opaque handle
 * released with its matching *_free function. Functions returning cf_status
 * leave a message for cf_last_error() on failure. Strings returned through
 * char** outputs are released with cf_string_free. */

#ifndef CARNOTFREQ_H_
#define CARNOTFREQ_H_

#include <stddef.h>
#include <stdint.h>

#if defined(CF_BUILDING_LIBRARY)
#define CF_API __attribute__((visibility("default")))
#else
#define CF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cf_status {
  CF_OK = 0,
  CF_DIMENSION_MISMATCH,
  CF_NON_SKEW_SYMMETRIC,
  CF_NON_POSITIVE_LAMBDA,
  CF_NOT_HTYPE,
  CF_ORIGIN_SINGULARITY,
  CF_INDEX_OUT_OF_RANGE,
  CF_NON_INTEGER_ALPHA,
  CF_RESOLUTION_TOO_SMALL,
  CF_INSUFFICIENT_SAMPLES,
  CF_ZERO_HEIGHT,
  CF_DISCREPANCY_NONZERO,
  CF_ZERO_DENOMINATOR,
  CF_NO_CONVERGENCE,
  CF_BAD_GRID,
  CF_PARSE_ERROR,
  CF_INVALID_ARGUMENT,
  CF_INTERNAL_ERROR
} cf_status;

typedef enum cf_fault { CF_FAULT_NONE = 0, CF_FAULT_PSI_SIGN } cf_fault;

typedef enum cf_poly_op {
  CF_OP_X = 0,        /* X_i, index i */
  CF_OP_THETA,        /* Theta_l, index l */
  CF_OP_SUBLAPLACIAN,
  CF_OP_EULER,
  CF_OP_DISCREPANCY,  /* numerator sum_l t_l Theta_l p; H-type only */
  CF_OP_HGRAD_SQ
} cf_poly_op;

typedef struct cf_group cf_group;
typedef struct cf_poly cf_poly;
typedef struct cf_rule cf_rule;
typedef struct cf_problem cf_problem;
typedef struct cf_grid cf_grid;
typedef struct cf_curve cf_curve;
typedef struct cf_report cf_report;

typedef struct cf_group_info {
  int m, k, N, Q;
  int is_htype;
  int is_metivier;
  int metivier_exact;  /* 0 when decided by sampling */
  double min_singular_value;
  int samples;
} cf_group_info;

typedef struct cf_curve_options {
  double rmin;
  double rmax;
  int steps;
  int has_kappa;               /* W and M columns need kappa */
  double kappa;
  const cf_poly* monneau_p;    /* optional; enables the M column */
  const char* center;          /* optional comma separated rationals, m + k entries */
} cf_curve_options;

typedef struct cf_curve_row {
  double r, D, H, N, W, M, disc;
} cf_curve_row;

typedef struct cf_problem_info {
  int m, k;
  double alpha;
  double Q;
  int dims;
} cf_problem_info;

typedef struct cf_grid_info {
  int iterations;
  double solver_residual;
  double discrete_residual;
  size_t nodes;
} cf_grid_info;

typedef struct cf_verify_options {
  int resolution;
  uint64_t mc_samples;
  uint64_t seed;
  int steps;
} cf_verify_options;

/* Errors and housekeeping. */
CF_API const char* cf_last_error(void);
CF_API const char* cf_status_name(cf_status status);
CF_API const char* cf_version(void);
CF_API void cf_string_free(char* s);
CF_API void cf_set_fault(cf_fault fault);

/* Groups. J is k row-major m x m matrices, k * m * m doubles. */
CF_API cf_status cf_group_from_json(const char* text, cf_group** out);
CF_API cf_status cf_group_heisenberg(int n, cf_group** out);
CF_API cf_status cf_group_make(int m, int k, const double* J, cf_group** out);
CF_API cf_status cf_group_info_get(const cf_group* g, cf_group_info* out);
CF_API cf_status cf_group_to_json(const cf_group* g, char** out);
CF_API void cf_group_free(cf_group* g);

/* Polynomials in exponential coordinates. */
CF_API cf_status cf_poly_from_json(const char* text, int m, int k, cf_poly** out);
CF_API cf_status cf_poly_to_json(const cf_poly* p, char** out);
CF_API int cf_poly_is_zero(const cf_poly* p);
CF_API cf_status cf_poly_apply(const cf_group* g, cf_poly_op op, int index, const cf_poly* p, cf_poly** out);
/* JSON array of polynomials spanning the solid harmonics of degree kappa. */
CF_API cf_status cf_harmonic_basis_json(const cf_group* g, int kappa, char** out);
CF_API void cf_poly_free(cf_poly* p);

/* Unit sphere quadrature. cache_dir may be NULL. */
CF_API cf_status cf_rule_group(const cf_group* g, int resolution, const char* cache_dir, cf_rule** out);
CF_API cf_status cf_rule_baouendi(int m, int k, double alpha, int resolution, const char* cache_dir, cf_rule** out);
CF_API size_t cf_rule_size(const cf_rule* r);
CF_API void cf_rule_free(cf_rule* r);

/* Frequency curves of a polynomial on a group. */
CF_API cf_status cf_frequency_curve(const cf_group* g, const cf_poly* u, const cf_rule* rule,
                                    const cf_curve_options* opts, cf_curve** out);
CF_API size_t cf_curve_size(const cf_curve* c);
CF_API cf_status cf_curve_row_get(const cf_curve* c, size_t i, cf_curve_row* out);
CF_API int cf_curve_zero_height(const cf_curve* c);
CF_API cf_status cf_curve_to_csv(const cf_curve* c, char** out);
CF_API void cf_curve_free(cf_curve* c);

/* Baouendi problems. The boundary file is resolved relative to the problem file. */
CF_API cf_status cf_problem_from_file(const char* path, cf_problem** out);
CF_API cf_status cf_problem_info_get(const cf_problem* p, cf_problem_info* out);
CF_API cf_status cf_problem_rule(const cf_problem* p, int resolution, const char* cache_dir, cf_rule** out);
CF_API void cf_problem_free(cf_problem* p);

CF_API cf_status cf_baouendi_solve(const cf_problem* p, cf_grid** out);
CF_API cf_status cf_grid_info_get(const cf_grid* g, cf_grid_info* out);
CF_API cf_status cf_grid_to_csv(const cf_grid* g, char** out);
CF_API void cf_grid_free(cf_grid* g);

/* Curves for a grid solution, or for a polynomial when u is given (grid may then be NULL).
 * monneau_p is read in the problem's (z, t) variables. */
CF_API cf_status cf_baouendi_curve(const cf_problem* p, const cf_grid* grid, const cf_poly* u, const cf_rule* rule,
                                   const cf_curve_options* opts, cf_curve** out);
/* Surface inner product of a and b on S_r with the psi weight, and the two norms. */
CF_API cf_status cf_baouendi_ortho(const cf_problem* p, const cf_poly* a, const cf_poly* b, double r,
                                   const cf_rule* rule, double* inner, double* norm_a, double* norm_b);
/* Derivative identity tables as CSV. When opts->has_kappa is 0 kappa is estimated as N at rmin;
 * the value used is written to kappa_used. */
CF_API cf_status cf_baouendi_weiss_csv(const cf_problem* p, const cf_grid* grid, const cf_poly* u, const cf_rule* rule,
                                       const cf_curve_options* opts, double* kappa_used, char** out);
CF_API cf_status cf_baouendi_monneau_csv(const cf_problem* p, const cf_grid* grid, const cf_poly* u,
                                         const cf_rule* rule, const cf_curve_options* opts, double* kappa_used,
                                         char** out);

/* Verification battery. */
CF_API cf_status cf_verify_run(const cf_verify_options* opts, cf_report** out);
CF_API int cf_report_passed(const cf_report* r);
CF_API cf_status cf_report_to_json(const cf_report* r, char** out);
CF_API cf_status cf_report_to_text(const cf_report* r, char** out);
CF_API void cf_report_free(cf_report* r);

#ifdef __cplusplus
}
#endif

#endif  /* CARNOTFREQ_H_ */
