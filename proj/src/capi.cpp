// Copyright 2026 The cvbell Authors
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

#include "cvbell/cvbell.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <string>
#include <vector>

#include "cvbell/bell.hpp"
#include "cvbell/commands.hpp"
#include "cvbell/dynamics.hpp"
#include "cvbell/errors.hpp"
#include "cvbell/mixed_states.hpp"
#include "cvbell/state_analysis.hpp"

struct cvb_state {
  cvbell::WignerFunction wigner;
};

struct cvb_report {
  cvbell::ReportRecord record;
};

namespace {

thread_local std::string g_last_error;

// Thrown for null pointers and bad enums; maps to CVB_ERR_INVALID_ARGUMENT.
struct InvalidArgument {
  const char* what;
};

template <class T>
T* require(T* p, const char* name) {
  if (p == nullptr) throw InvalidArgument{name};
  return p;
}

template <class F>
cvb_status guarded(F&& f) noexcept {
  try {
    f();
    g_last_error.clear();
    return CVB_OK;
  } catch (const InvalidArgument& e) {
    g_last_error = std::string("invalid argument: ") + e.what;
    return CVB_ERR_INVALID_ARGUMENT;
  } catch (const cvbell::DomainError& e) {
    g_last_error = e.what();
    return CVB_ERR_DOMAIN;
  } catch (const cvbell::ConvergenceError& e) {
    g_last_error = e.what();
    return CVB_ERR_CONVERGENCE;
  } catch (const cvbell::InconsistencyError& e) {
    g_last_error = e.what();
    return CVB_ERR_INCONSISTENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CVB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CVB_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return CVB_ERR_INTERNAL;
  }
}

cvbell::Mat4 to_mat(const double* m) {
  std::array<double, 16> v{};
  std::memcpy(v.data(), require(m, "matrix"), sizeof(double) * 16);
  return cvbell::Mat4::from_rows(v);
}

void from_mat(const cvbell::Mat4& m, double* out) {
  std::memcpy(require(out, "out"), m.data().data(), sizeof(double) * 16);
}

cvbell::SqueezedStateParams to_params(const cvb_params* p) {
  require(p, "params");
  return {p->r, p->d, p->nbar};
}

cvbell::GaussianForm to_form(const cvb_form* f) {
  require(f, "form");
  return {f->c1, f->c2, f->h};
}

cvb_form from_form(const cvbell::GaussianForm& f) { return {f.c1, f.c2, f.h}; }

cvbell::TwoModePoint to_point(const cvb_point* p) {
  require(p, "point");
  return cvbell::TwoModePoint::from_real({p->x[0], p->x[1], p->x[2], p->x[3]});
}

cvbell::MixtureKind to_kind(cvb_mixture_kind k) {
  switch (k) {
    case CVB_MIXTURE_WERNER_THERMAL: return cvbell::MixtureKind::WernerThermal;
    case CVB_MIXTURE_PHASE_DIFFUSED: return cvbell::MixtureKind::PhaseDiffused;
  }
  throw InvalidArgument{"mixture kind"};
}

cvbell::ReportFormat to_format(cvb_format f) {
  switch (f) {
    case CVB_FORMAT_CSV: return cvbell::ReportFormat::Csv;
    case CVB_FORMAT_JSON: return cvbell::ReportFormat::Json;
  }
  throw InvalidArgument{"format"};
}

cvb_steady_class to_c(cvbell::SteadyStateClass c) {
  switch (c) {
    case cvbell::SteadyStateClass::SqueezedThermal: return CVB_STEADY_SQUEEZED_THERMAL;
    case cvbell::SteadyStateClass::Thermal: return CVB_STEADY_THERMAL;
    case cvbell::SteadyStateClass::None: return CVB_STEADY_NONE;
    case cvbell::SteadyStateClass::BoundaryUndefined: return CVB_STEADY_BOUNDARY_UNDEFINED;
  }
  return CVB_STEADY_NONE;
}

cvbell::BellSearch to_search(const cvb_bell_search* s) {
  require(s, "search");
  if (s->free_mask & ~0xFu) throw InvalidArgument{"free_mask"};
  cvbell::BellSearch out;
  for (std::size_t k = 0; k < 4; ++k) {
    out.free[k] = (s->free_mask >> k) & 1u;
    out.fixed[k] = s->fixed[k];
    out.lower[k] = s->lower[k];
    out.upper[k] = s->upper[k];
  }
  out.grid_points = s->grid_points;
  return out;
}

std::vector<double> to_vector(const double* v, std::size_t n, const char* name) {
  if (n == 0) return {};
  require(v, name);
  return {v, v + n};
}

cvb_bell_evaluation from_bell(const cvbell::BellEvaluation& e) {
  cvb_bell_evaluation out{};
  out.b = e.B;
  for (std::size_t i = 0; i < 4; ++i) out.correlations[i] = e.correlations[i];
  out.j = e.settings.J;
  return out;
}

template <class Build>
cvb_status make_report(cvb_report** out, Build&& build) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    auto* r = new cvb_report{build()};
    *out = r;
  });
}

}  // namespace

extern "C" {

const char* cvb_version(void) { return cvbell::commands::kVersion; }

const char* cvb_last_error(void) { return g_last_error.c_str(); }

const char* cvb_status_name(cvb_status status) {
  switch (status) {
    case CVB_OK: return "ok";
    case CVB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CVB_ERR_DOMAIN: return "domain error";
    case CVB_ERR_CONVERGENCE: return "convergence failure";
    case CVB_ERR_INCONSISTENT: return "internal inconsistency";
    case CVB_ERR_IO: return "i/o error";
    case CVB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void cvb_bell_search_defaults(cvb_bell_search* search) {
  if (search == nullptr) return;
  const cvbell::BellSearch d;
  search->free_mask = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    search->fixed[k] = d.fixed[k];
    search->lower[k] = d.lower[k];
    search->upper[k] = d.upper[k];
  }
  search->grid_points = d.grid_points;
}

cvb_status cvb_params_from_rates(double kappa, double gamma, double t, double nbar, cvb_params* out) {
  return guarded([&] {
    require(out, "out");
    const auto p = cvbell::SqueezedStateParams::from_rates(kappa, gamma, t, nbar);
    *out = {p.r(), p.d(), p.nbar()};
  });
}

cvb_status cvb_wigner_pure(const cvb_point* point, double r, double* out) {
  return guarded([&] { *require(out, "out") = cvbell::wigner_pure_2mss(to_point(point), r); });
}

cvb_status cvb_wigner_gaussian(const cvb_point* point, const cvb_form* form, double* out) {
  return guarded(
      [&] { *require(out, "out") = cvbell::wigner_gaussian_eval(to_point(point), to_form(form)); });
}

cvb_status cvb_w_matrix(const cvb_form* form, double out[16]) {
  return guarded([&] { from_mat(cvbell::w_matrix_from_form(to_form(form)).entries, out); });
}

cvb_status cvb_v_from_w(const double w[16], double out[16]) {
  return guarded([&] {
    from_mat(cvbell::v_from_w({to_mat(w), cvbell::Convention::W}).entries, out);
  });
}

cvb_status cvb_nm_from_v(const double v[16], cvb_moments* out) {
  return guarded([&] {
    require(out, "out");
    const auto nm = cvbell::nm_from_v({to_mat(v), cvbell::Convention::V});
    *out = {nm.n, nm.m};
  });
}

cvb_status cvb_evolve_coefficients(const cvb_params* params, cvb_form* out) {
  return guarded([&] { *require(out, "out") = from_form(cvbell::evolve_coefficients(to_params(params))); });
}

cvb_status cvb_drift_eigenvalues(double gamma, double kappa, double out[4]) {
  return guarded([&] {
    require(out, "out");
    const auto ev = cvbell::drift_eigenvalues(gamma, kappa);
    for (std::size_t i = 0; i < 4; ++i) out[i] = ev[i];
  });
}

cvb_status cvb_find_steady_state(double gamma, double kappa, double nbar, cvb_steady_state* out) {
  return guarded([&] {
    require(out, "out");
    const auto s = cvbell::steady_state(gamma, kappa, nbar);
    *out = cvb_steady_state{};
    out->exists = s.exists ? 1 : 0;
    out->classification = to_c(s.classification);
    if (s.limit_form) {
      out->limit_form = from_form(*s.limit_form);
      const auto nm = cvbell::nm_from_form(*s.limit_form);
      out->limit_moments = {nm.n, nm.m};
    }
  });
}

cvb_status cvb_covariance_ode_oracle(double kappa, double gamma, double nbar, double t, int steps,
                                     double out[16]) {
  return guarded([&] { from_mat(cvbell::covariance_ode_oracle(kappa, gamma, nbar, t, steps), out); });
}

cvb_status cvb_propagate_green(const double sigma0[16], double kappa, double gamma, double nbar,
                               double t, cvb_form* out) {
  return guarded([&] {
    *require(out, "out") = from_form(cvbell::propagate_green(to_mat(sigma0), kappa, gamma, nbar, t));
  });
}

cvb_status cvb_is_pure(const cvb_form* form, cvb_purity* out) {
  return guarded([&] {
    require(out, "out");
    const auto p = cvbell::is_pure(to_form(form));
    *out = {p.pure ? 1 : 0, p.residual};
  });
}

cvb_status cvb_classify_separability(const cvb_params* params, cvb_separability* out) {
  return guarded([&] {
    require(out, "out");
    const auto s = cvbell::separability_eigenvalues(to_params(params));
    for (std::size_t i = 0; i < 4; ++i) out->eigenvalues[i] = s.eigenvalues[i];
    out->e12 = s.e12;
    out->e34 = s.e34;
    out->margin = s.margin;
    out->separable = s.separable ? 1 : 0;
  });
}

cvb_status cvb_state_create_pure(double r, cvb_state** out) {
  return guarded([&] {
    require(out, "out");
    *out = new cvb_state{cvbell::pure_evaluator(r)};
  });
}

cvb_status cvb_state_create_diffused(const cvb_params* params, cvb_state** out) {
  return guarded([&] {
    require(out, "out");
    *out = new cvb_state{cvbell::gaussian_evaluator(cvbell::evolve_coefficients(to_params(params)))};
  });
}

cvb_status cvb_state_create_form(const cvb_form* form, cvb_state** out) {
  return guarded([&] {
    require(out, "out");
    *out = new cvb_state{cvbell::gaussian_evaluator(to_form(form))};
  });
}

cvb_status cvb_state_create_mixture(cvb_mixture_kind kind, double p, double r, cvb_state** out) {
  return guarded([&] {
    require(out, "out");
    *out = new cvb_state{cvbell::mixture_evaluator({p, r, to_kind(kind)})};
  });
}

void cvb_state_destroy(cvb_state* state) { delete state; }

cvb_status cvb_state_wigner(const cvb_state* state, const cvb_point* point, double* out) {
  return guarded([&] { *require(out, "out") = require(state, "state")->wigner(to_point(point)); });
}

cvb_status cvb_state_bell(const cvb_state* state, double j, cvb_bell_evaluation* out) {
  return guarded([&] {
    *require(out, "out") = from_bell(cvbell::bell_combination(require(state, "state")->wigner, j));
  });
}

cvb_status cvb_state_small_j_slope(const cvb_state* state, cvb_slope* out) {
  return guarded([&] {
    require(out, "out");
    const auto s = cvbell::small_j_slope(require(state, "state")->wigner);
    *out = {s.slope, s.b0, s.anchored ? 1 : 0};
  });
}

cvb_status cvb_maximize_bell(const cvb_bell_search* search, cvb_bell_maximum* out) {
  return guarded([&] {
    require(out, "out");
    const auto m = cvbell::maximize_bell(to_search(search));
    *out = cvb_bell_maximum{};
    for (std::size_t k = 0; k < 4; ++k) {
      out->argmax[k] = m.argmax[k];
      out->grid_argmax[k] = m.grid_argmax[k];
    }
    out->value = m.value;
    out->grid_value = m.grid_value;
    out->evaluations = m.evaluations;
    out->converged = m.simplex_converged ? 1 : 0;
  });
}

cvb_status cvb_violation_threshold(cvb_mixture_kind kind, double r, const double* j_grid,
                                   size_t j_count, cvb_threshold* out) {
  return guarded([&] {
    require(out, "out");
    const auto grid = j_grid ? to_vector(j_grid, j_count, "j_grid") : cvbell::default_threshold_j_grid();
    const auto t = cvbell::violation_threshold(to_kind(kind), r, grid);
    *out = {t.violates ? 1 : 0, t.p_star, t.max_b_pure};
  });
}

cvb_status cvb_finite_dim_werner_threshold(int dim, double* out) {
  return guarded([&] { *require(out, "out") = cvbell::finite_dim_werner_threshold(dim); });
}

// ---- reports

cvb_status cvb_report_coeffs(const cvb_params* params, cvb_report** out) {
  return make_report(out, [&] { return cvbell::commands::coeffs(to_params(params)); });
}

cvb_status cvb_report_coeffs_scan(double kappa, double gamma, double nbar, double t_max,
                                  size_t samples, cvb_report** out) {
  return make_report(out, [&] { return cvbell::commands::coeffs_scan(kappa, gamma, nbar, t_max, samples); });
}

cvb_status cvb_report_bell(const cvb_params* params, const double* j, size_t j_count, cvb_report** out) {
  return make_report(out, [&] {
    return cvbell::commands::bell(to_params(params), to_vector(j, j_count, "j"));
  });
}

cvb_status cvb_report_maximize(const cvb_bell_search* search, cvb_report** out) {
  return make_report(out, [&] { return cvbell::commands::maximize(to_search(search)); });
}

cvb_status cvb_report_separability(const cvb_params* params, cvb_report** out) {
  return make_report(out, [&] { return cvbell::commands::separability(to_params(params)); });
}

cvb_status cvb_report_steady(double gamma, double kappa, double nbar, cvb_report** out) {
  return make_report(out, [&] { return cvbell::commands::steady(gamma, kappa, nbar); });
}

cvb_status cvb_report_mixture_curves(cvb_mixture_kind kind, double r, const double* p, size_t p_count,
                                     const double* j, size_t j_count, cvb_report** out) {
  return make_report(out, [&] {
    return cvbell::commands::mixture_curves(to_kind(kind), r, to_vector(p, p_count, "p"),
                                            to_vector(j, j_count, "j"));
  });
}

cvb_status cvb_report_mixture_threshold(cvb_mixture_kind kind, double r, const double* j,
                                        size_t j_count, cvb_report** out) {
  return make_report(out, [&] {
    const auto k = to_kind(kind);
    std::vector<double> grid;
    if (j)
      grid = to_vector(j, j_count, "j");
    else
      grid = k == cvbell::MixtureKind::PhaseDiffused ? cvbell::commands::phase_diffused_threshold_j_grid()
                                                     : cvbell::default_threshold_j_grid();
    return cvbell::commands::mixture_threshold(k, r, grid);
  });
}

cvb_status cvb_report_phase_diffused_slope(double r, const double* p, size_t p_count, cvb_report** out) {
  return make_report(out, [&] {
    return cvbell::commands::phase_diffused_slope(r, to_vector(p, p_count, "p"));
  });
}

cvb_status cvb_report_figure(int index, cvb_report** out) {
  return make_report(out, [&] { return cvbell::commands::figure(index); });
}

size_t cvb_report_row_count(const cvb_report* report) { return report ? report->record.rows.size() : 0; }

size_t cvb_report_column_count(const cvb_report* report) {
  return report ? report->record.columns.size() : 0;
}

const char* cvb_report_column_name(const cvb_report* report, size_t column) {
  if (!report || column >= report->record.columns.size()) return nullptr;
  return report->record.columns[column].c_str();
}

cvb_status cvb_report_value(const cvb_report* report, size_t row, size_t column, double* out) {
  return guarded([&] {
    require(out, "out");
    const auto& rec = require(report, "report")->record;
    if (row >= rec.rows.size() || column >= rec.columns.size()) throw InvalidArgument{"row/column index"};
    *out = rec.rows[row][column];
  });
}

cvb_status cvb_report_render(const cvb_report* report, cvb_format format, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    const std::string text = cvbell::render(require(report, "report")->record, to_format(format));
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

cvb_status cvb_report_write(const cvb_report* report, cvb_format format, const char* path) {
  std::string text;
  const cvb_status st = guarded([&] {
    require(path, "path");
    text = cvbell::render(require(report, "report")->record, to_format(format));
  });
  if (st != CVB_OK) return st;
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (f) f << text;
  if (!f) {
    g_last_error = std::string("cannot write ") + path;
    return CVB_ERR_IO;
  }
  return CVB_OK;
}

void cvb_report_destroy(cvb_report* report) { delete report; }

void cvb_string_free(char* s) { std::free(s); }

}  // extern "C"
