/*
 * Copyright 2026 The cvbell Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to libcvbell.
 *
 * Every fallible call returns a cvb_status. On failure, cvb_last_error()
 * returns a message describing the most recent failure on the calling thread.
 * Objects (states, reports) are opaque handles created by cvb_*_create or
 * cvb_report_* and released with the matching destroy function. Strings
 * handed out by the library are released with cvb_string_free.
 *
 * Matrices are passed as 16 doubles in row-major order over the real phase
 * space variables (x1, x2, x3, x4) with alpha1 = x1 + i x2, alpha2 = x3 + i x4.
 */

#ifndef CVBELL_CVBELL_H
#define CVBELL_CVBELL_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(CVBELL_BUILDING_LIBRARY)
#define CVB_API __declspec(dllexport)
#else
#define CVB_API __declspec(dllimport)
#endif
#else
#define CVB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cvb_status {
  CVB_OK = 0,
  CVB_ERR_INVALID_ARGUMENT = 1, /* null pointer, unknown enum or format */
  CVB_ERR_DOMAIN = 2,           /* parameter outside the model's domain */
  CVB_ERR_CONVERGENCE = 3,      /* iterative routine missed its tolerance */
  CVB_ERR_INCONSISTENT = 4,     /* two evaluation routes disagreed */
  CVB_ERR_IO = 5,               /* could not write output */
  CVB_ERR_INTERNAL = 6
} cvb_status;

CVB_API const char* cvb_version(void);
CVB_API const char* cvb_last_error(void);
CVB_API const char* cvb_status_name(cvb_status status);

/* ---- values ------------------------------------------------------------ */

typedef struct cvb_params {
  double r;    /* squeezing, kappa t */
  double d;    /* diffusion, gamma t */
  double nbar; /* reservoir photon number */
} cvb_params;

typedef struct cvb_form {
  double c1;
  double c2;
  double h;
} cvb_form;

typedef struct cvb_point {
  double x[4]; /* Re a1, Im a1, Re a2, Im a2 */
} cvb_point;

typedef struct cvb_moments {
  double n;
  double m;
} cvb_moments;

typedef enum cvb_steady_class {
  CVB_STEADY_SQUEEZED_THERMAL = 0,
  CVB_STEADY_THERMAL = 1,
  CVB_STEADY_NONE = 2,
  CVB_STEADY_BOUNDARY_UNDEFINED = 3
} cvb_steady_class;

typedef struct cvb_steady_state {
  int exists;
  cvb_steady_class classification;
  cvb_form limit_form;       /* valid when exists */
  cvb_moments limit_moments; /* valid when exists */
} cvb_steady_state;

typedef struct cvb_purity {
  int pure;
  double residual;
} cvb_purity;

typedef struct cvb_separability {
  double eigenvalues[4]; /* of V - I/2, ascending */
  double e12;
  double e34;
  double margin;
  int separable;
} cvb_separability;

typedef struct cvb_bell_evaluation {
  double b;
  double correlations[4]; /* Pi(0,0), Pi(a,0), Pi(0,-a), Pi(a,-a), a = sqrt(J) */
  double j;
} cvb_bell_evaluation;

typedef struct cvb_slope {
  double slope;
  double b0;
  int anchored; /* B(0) == 2 */
} cvb_slope;

/* Bit flags selecting the free parameters of a Bell maximization. */
enum {
  CVB_PARAM_J = 1u << 0,
  CVB_PARAM_R = 1u << 1,
  CVB_PARAM_D = 1u << 2,
  CVB_PARAM_NBAR = 1u << 3
};

/* Arrays are indexed (J, r, d, nbar). */
typedef struct cvb_bell_search {
  unsigned free_mask;
  double fixed[4];
  double lower[4];
  double upper[4];
  int grid_points; /* >= 32 */
} cvb_bell_search;

typedef struct cvb_bell_maximum {
  double argmax[4];
  double value;
  double grid_argmax[4];
  double grid_value;
  size_t evaluations;
  int converged;
} cvb_bell_maximum;

typedef enum cvb_mixture_kind {
  CVB_MIXTURE_WERNER_THERMAL = 0,
  CVB_MIXTURE_PHASE_DIFFUSED = 1
} cvb_mixture_kind;

typedef struct cvb_threshold {
  int violates;
  double p_star;
  double max_b_pure;
} cvb_threshold;

typedef enum cvb_format { CVB_FORMAT_CSV = 0, CVB_FORMAT_JSON = 1 } cvb_format;

/* Fills search with the default bounds J in [1e-4, 1], r in [0, 3],
 * d in [0, 5], nbar in [0, 2], fixed (0.01, 1.5, 0, 0), no free parameter. */
CVB_API void cvb_bell_search_defaults(cvb_bell_search* search);

/* ---- phase space ------------------------------------------------------- */

CVB_API cvb_status cvb_params_from_rates(double kappa, double gamma, double t, double nbar,
                                         cvb_params* out);
CVB_API cvb_status cvb_wigner_pure(const cvb_point* point, double r, double* out);
CVB_API cvb_status cvb_wigner_gaussian(const cvb_point* point, const cvb_form* form, double* out);
CVB_API cvb_status cvb_w_matrix(const cvb_form* form, double out[16]);
CVB_API cvb_status cvb_v_from_w(const double w[16], double out[16]);
CVB_API cvb_status cvb_nm_from_v(const double v[16], cvb_moments* out);

/* ---- dynamics ---------------------------------------------------------- */

CVB_API cvb_status cvb_evolve_coefficients(const cvb_params* params, cvb_form* out);
CVB_API cvb_status cvb_drift_eigenvalues(double gamma, double kappa, double out[4]);
CVB_API cvb_status cvb_find_steady_state(double gamma, double kappa, double nbar, cvb_steady_state* out);
CVB_API cvb_status cvb_covariance_ode_oracle(double kappa, double gamma, double nbar, double t,
                                             int steps, double out[16]);
CVB_API cvb_status cvb_propagate_green(const double sigma0[16], double kappa, double gamma,
                                       double nbar, double t, cvb_form* out);

/* ---- state analysis ---------------------------------------------------- */

CVB_API cvb_status cvb_is_pure(const cvb_form* form, cvb_purity* out);
CVB_API cvb_status cvb_classify_separability(const cvb_params* params, cvb_separability* out);

/* ---- states and Bell tests -------------------------------------------- */

typedef struct cvb_state cvb_state;

CVB_API cvb_status cvb_state_create_pure(double r, cvb_state** out);
CVB_API cvb_status cvb_state_create_diffused(const cvb_params* params, cvb_state** out);
CVB_API cvb_status cvb_state_create_form(const cvb_form* form, cvb_state** out);
CVB_API cvb_status cvb_state_create_mixture(cvb_mixture_kind kind, double p, double r,
                                            cvb_state** out);
CVB_API void cvb_state_destroy(cvb_state* state);

CVB_API cvb_status cvb_state_wigner(const cvb_state* state, const cvb_point* point, double* out);
CVB_API cvb_status cvb_state_bell(const cvb_state* state, double j, cvb_bell_evaluation* out);
CVB_API cvb_status cvb_state_small_j_slope(const cvb_state* state, cvb_slope* out);

CVB_API cvb_status cvb_maximize_bell(const cvb_bell_search* search, cvb_bell_maximum* out);
/* j_grid may be NULL for the default 200-point geometric grid on [1e-4, 1]. */
CVB_API cvb_status cvb_violation_threshold(cvb_mixture_kind kind, double r, const double* j_grid,
                                           size_t j_count, cvb_threshold* out);
CVB_API cvb_status cvb_finite_dim_werner_threshold(int dim, double* out);

/* ---- reports ----------------------------------------------------------- */

typedef struct cvb_report cvb_report;

CVB_API cvb_status cvb_report_coeffs(const cvb_params* params, cvb_report** out);
CVB_API cvb_status cvb_report_coeffs_scan(double kappa, double gamma, double nbar, double t_max,
                                          size_t samples, cvb_report** out);
CVB_API cvb_status cvb_report_bell(const cvb_params* params, const double* j, size_t j_count,
                                   cvb_report** out);
CVB_API cvb_status cvb_report_maximize(const cvb_bell_search* search, cvb_report** out);
CVB_API cvb_status cvb_report_separability(const cvb_params* params, cvb_report** out);
CVB_API cvb_status cvb_report_steady(double gamma, double kappa, double nbar, cvb_report** out);
CVB_API cvb_status cvb_report_mixture_curves(cvb_mixture_kind kind, double r, const double* p,
                                             size_t p_count, const double* j, size_t j_count,
                                             cvb_report** out);
/* j may be NULL for the default grid of the family. */
CVB_API cvb_status cvb_report_mixture_threshold(cvb_mixture_kind kind, double r, const double* j,
                                                size_t j_count, cvb_report** out);
CVB_API cvb_status cvb_report_phase_diffused_slope(double r, const double* p, size_t p_count,
                                                   cvb_report** out);
CVB_API cvb_status cvb_report_figure(int index, cvb_report** out);

CVB_API size_t cvb_report_row_count(const cvb_report* report);
CVB_API size_t cvb_report_column_count(const cvb_report* report);
CVB_API const char* cvb_report_column_name(const cvb_report* report, size_t column);
CVB_API cvb_status cvb_report_value(const cvb_report* report, size_t row, size_t column, double* out);
CVB_API cvb_status cvb_report_render(const cvb_report* report, cvb_format format, char** out);
CVB_API cvb_status cvb_report_write(const cvb_report* report, cvb_format format, const char* path);
CVB_API void cvb_report_destroy(cvb_report* report);

CVB_API void cvb_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* CVBELL_CVBELL_H */
