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

#include "cvbell/commands.hpp"

#include <cmath>
#include <string>

#include "cvbell/dynamics.hpp"
#include "cvbell/errors.hpp"
#include "cvbell/state_analysis.hpp"
#include "cvbell/tolerances.hpp"

namespace cvbell::commands {

namespace {

double flag(bool b) { return b ? 1.0 : 0.0; }

void add_params(ReportRecord& rec, const SqueezedStateParams& p) {
  rec.set_meta("r", p.r());
  rec.set_meta("d", p.d());
  rec.set_meta("nbar", p.nbar());
}

std::string join(std::span<const double> values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ' ';
    s += format_number(values[i]);
  }
  return s;
}

}  // namespace

void stamp(ReportRecord& rec, std::string_view command) {
  rec.set_meta("command", std::string(command));
  rec.set_meta("version", std::string(kVersion));
  rec.set_meta("tol.v_pattern", Tolerances::v_pattern);
  rec.set_meta("tol.purity", Tolerances::purity);
  rec.set_meta("tol.eigen_routes", Tolerances::eigen_routes);
  rec.set_meta("tol.separability_boundary", Tolerances::separability_boundary);
  rec.set_meta("tol.w_v_relation", Tolerances::w_v_relation);
  rec.set_meta("tol.taylor_switch", Tolerances::taylor_switch);
  rec.set_meta("tol.bessel_switch", Tolerances::bessel_switch);
  rec.set_meta("tol.ode_oracle", Tolerances::ode_oracle);
  rec.set_meta("tol.simplex_diameter", Tolerances::simplex_diameter);
  rec.set_meta("tol.mixture_affine", Tolerances::mixture_affine);
  rec.set_meta("tol.phase_average", Tolerances::phase_average);
  rec.set_meta("tol.threshold_bisection", Tolerances::threshold_bisection);
  rec.set_meta("tol.small_j", Tolerances::small_j);
}

namespace {

std::vector<double> coeff_row(const SqueezedStateParams& p) {
  const GaussianForm form = evolve_coefficients(p);
  const ModeMoments nm = nm_from_v(v_from_w(w_matrix_from_form(form)));
  const PurityReport purity = is_pure(form);
  const SeparabilityReport sep = separability_eigenvalues(p);
  return {form.c1, form.c2, form.h, nm.n, nm.m, flag(purity.pure), purity.residual,
          flag(sep.separable), sep.margin};
}

const std::vector<std::string> kCoeffColumns = {"c1", "c2", "h", "N", "M", "pure",
                                                "purity_residual", "separable", "margin"};

}  // namespace

ReportRecord coeffs(const SqueezedStateParams& params) {
  ReportRecord rec;
  stamp(rec, "coeffs");
  add_params(rec, params);
  rec.columns = {"r", "d", "nbar"};
  rec.columns.insert(rec.columns.end(), kCoeffColumns.begin(), kCoeffColumns.end());
  std::vector<double> row{params.r(), params.d(), params.nbar()};
  const auto tail = coeff_row(params);
  row.insert(row.end(), tail.begin(), tail.end());
  rec.add_row(std::move(row));
  return rec;
}

ReportRecord coeffs_scan(double kappa, double gamma, double nbar, double t_max, std::size_t samples) {
  if (samples < 2) throw DomainError("coeffs scan: need at least 2 samples");
  if (!std::isfinite(t_max) || t_max < 0.0) throw DomainError("coeffs scan: t_max must be >= 0");
  ReportRecord rec;
  stamp(rec, "coeffs");
  rec.set_meta("kappa", kappa);
  rec.set_meta("gamma", gamma);
  rec.set_meta("nbar", nbar);
  rec.set_meta("t_max", t_max);
  rec.set_meta("samples", static_cast<double>(samples));
  rec.columns = {"t", "r", "d"};
  rec.columns.insert(rec.columns.end(), kCoeffColumns.begin(), kCoeffColumns.end());
  for (double t : linear_grid(0.0, t_max, samples)) {
    const auto p = SqueezedStateParams::from_rates(kappa, gamma, t, nbar);
    std::vector<double> row{t, p.r(), p.d()};
    const auto tail = coeff_row(p);
    row.insert(row.end(), tail.begin(), tail.end());
    rec.add_row(std::move(row));
  }
  return rec;
}

ReportRecord bell(const SqueezedStateParams& params, std::span<const double> J_values) {
  if (J_values.empty()) throw DomainError("bell: no J values");
  ReportRecord rec;
  stamp(rec, "bell");
  add_params(rec, params);
  const GaussianForm form = evolve_coefficients(params);
  rec.set_meta("c1", form.c1);
  rec.set_meta("c2", form.c2);
  rec.set_meta("h", form.h);
  rec.columns = {"J", "B", "Pi_0_0", "Pi_a_0", "Pi_0_-a", "Pi_a_-a", "B_closed_form"};
  const WignerFunction w = gaussian_evaluator(form);
  for (double J : J_values) {
    const BellEvaluation e = bell_combination(w, J);
    rec.add_row({J, e.B, e.correlations[0], e.correlations[1], e.correlations[2], e.correlations[3],
                 bell_closed_form(form, J)});
  }
  return rec;
}

ReportRecord maximize(const BellSearch& search) {
  const BellMaximum m = maximize_bell(search);
  ReportRecord rec;
  stamp(rec, "maximize");
  std::string free;
  for (std::size_t k = 0; k < 4; ++k) {
    const std::string name(to_string(BellParameter{k}));
    if (search.free[k]) {
      free += free.empty() ? name : "," + name;
      rec.set_meta(name + ".lower", search.lower[k]);
      rec.set_meta(name + ".upper", search.upper[k]);
    } else {
      rec.set_meta(name, search.fixed[k]);
    }
  }
  rec.set_meta("free", free);
  rec.set_meta("grid_points", static_cast<double>(search.grid_points));
  rec.columns = {"J", "r", "d", "nbar", "B_max", "grid_J", "grid_r", "grid_d", "grid_nbar",
                 "grid_B", "evaluations", "converged"};
  rec.add_row({m.argmax[0], m.argmax[1], m.argmax[2], m.argmax[3], m.value, m.grid_argmax[0],
               m.grid_argmax[1], m.grid_argmax[2], m.grid_argmax[3], m.grid_value,
               static_cast<double>(m.evaluations), flag(m.simplex_converged)});
  return rec;
}

ReportRecord separability(const SqueezedStateParams& params) {
  const SeparabilityReport s = separability_eigenvalues(params);
  const ModeMoments nm = nm_from_form(evolve_coefficients(params));
  ReportRecord rec;
  stamp(rec, "separability");
  add_params(rec, params);
  rec.columns = {"r", "d", "nbar", "eig1", "eig2", "eig3", "eig4", "e12", "e34", "margin",
                 "separable", "N", "M"};
  rec.add_row({params.r(), params.d(), params.nbar(), s.eigenvalues[0], s.eigenvalues[1],
               s.eigenvalues[2], s.eigenvalues[3], s.e12, s.e34, s.margin, flag(s.separable), nm.n,
               nm.m});
  return rec;
}

ReportRecord steady(double gamma, double kappa, double nbar) {
  const SteadyStateReport s = steady_state(gamma, kappa, nbar);
  const auto ev = drift_eigenvalues(gamma, kappa);
  ReportRecord rec;
  stamp(rec, "steady");
  rec.set_meta("gamma", gamma);
  rec.set_meta("kappa", kappa);
  rec.set_meta("nbar", nbar);
  rec.set_meta("classification", std::string(to_string(s.classification)));
  rec.columns = {"gamma", "kappa", "nbar", "exists", "lambda1", "lambda2", "lambda3", "lambda4"};
  std::vector<double> row{gamma, kappa, nbar, flag(s.exists), ev[0], ev[1], ev[2], ev[3]};
  if (s.limit_form) {
    const ModeMoments nm = nm_from_form(*s.limit_form);
    for (const char* c : {"c1", "c2", "h", "N", "M"}) rec.columns.emplace_back(c);
    row.insert(row.end(), {s.limit_form->c1, s.limit_form->c2, s.limit_form->h, nm.n, nm.m});
  }
  rec.add_row(std::move(row));
  return rec;
}

ReportRecord mixture_curves(MixtureKind kind, double r, std::span<const double> p_values,
                            std::span<const double> J_values) {
  if (p_values.empty() || J_values.empty()) throw DomainError("mixture curves: empty p or J list");
  ReportRecord rec;
  stamp(rec, kind == MixtureKind::WernerThermal ? "werner" : "phase-diffused");
  rec.set_meta("kind", std::string(to_string(kind)));
  rec.set_meta("r", r);
  rec.set_meta("p_values", join(p_values));
  rec.columns = {"p", "J", "B", "Pi_0_0", "Pi_a_0", "Pi_0_-a", "Pi_a_-a"};
  for (double p : p_values) {
    const MixtureSpec spec{p, r, kind};
    for (double J : J_values) {
      const BellEvaluation e = mixture_bell(spec, J);
      rec.add_row({p, J, e.B, e.correlations[0], e.correlations[1], e.correlations[2], e.correlations[3]});
    }
  }
  return rec;
}

ReportRecord mixture_threshold(MixtureKind kind, double r, std::span<const double> J_values) {
  const ViolationThreshold t = violation_threshold(kind, r, J_values);
  ReportRecord rec;
  stamp(rec, kind == MixtureKind::WernerThermal ? "werner" : "phase-diffused");
  rec.set_meta("kind", std::string(to_string(kind)));
  rec.set_meta("r", r);
  rec.set_meta("J_min", J_values.front());
  rec.set_meta("J_max", J_values.back());
  rec.set_meta("J_points", static_cast<double>(J_values.size()));
  rec.columns = {"r", "violates", "p_star", "max_B_pure"};
  rec.add_row({r, flag(t.violates), t.p_star, t.max_b_pure});
  return rec;
}

ReportRecord phase_diffused_slope(double r, std::span<const double> p_values) {
  if (p_values.empty()) throw DomainError("phase-diffused slope: empty p list");
  ReportRecord rec;
  stamp(rec, "phase-diffused");
  rec.set_meta("kind", std::string(to_string(MixtureKind::PhaseDiffused)));
  rec.set_meta("r", r);
  rec.columns = {"p", "slope", "slope_expected", "B0", "anchored"};
  for (double p : p_values) {
    const SlopeEstimate s = small_j_slope(mixture_evaluator({p, r, MixtureKind::PhaseDiffused}));
    rec.add_row({p, s.slope, 4.0 * p * std::sinh(2.0 * r), s.b0, flag(s.anchored)});
  }
  return rec;
}

std::vector<double> phase_diffused_threshold_j_grid() { return geometric_grid(1e-10, 1.0, 400); }

namespace {

ReportRecord figure_separability() {
  constexpr double r = 1.5;
  const std::vector<double> d_lines{2.5, 5.0};
  const std::vector<double> nbar = linear_grid(0.0, 10.0, 101);
  const SeparabilityMap map = separability_map(r, d_lines, nbar);
  ReportRecord rec;
  stamp(rec, "figure");
  rec.set_meta("figure", 1.0);
  rec.set_meta("r", r);
  for (std::size_t i = 0; i < d_lines.size(); ++i)
    rec.set_meta("boundary_nbar.d=" + format_number(d_lines[i]),
                 map.boundary_nbar[i] ? *map.boundary_nbar[i] : -1.0);
  rec.columns = {"d", "nbar", "N", "M", "e12", "e34", "margin", "separable"};
  for (double d : d_lines)
    for (double n : nbar) {
      const SqueezedStateParams p(r, d, n);
      const SeparabilityReport s = separability_eigenvalues(p);
      const ModeMoments nm = nm_from_form(evolve_coefficients(p));
      rec.add_row({d, n, nm.n, nm.m, s.e12, s.e34, s.margin, flag(s.separable)});
    }
  return rec;
}

ReportRecord figure_bell_surface() {
  const auto J = geometric_grid(1e-4, 1.0, 61);
  const auto d = linear_grid(0.0, 1.0, 51);
  const BellSurface s = bell_surface(1.5, 0.0, J, d);
  ReportRecord rec;
  stamp(rec, "figure");
  rec.set_meta("figure", 2.0);
  rec.set_meta("r", 1.5);
  rec.set_meta("nbar", 0.0);
  rec.columns = {"J", "d", "B"};
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < J.size(); ++j) rec.add_row({J[j], d[i], s.values[i][j]});
  return rec;
}

ReportRecord figure_bell_vs_diffusion() {
  constexpr double J = 0.01;
  ReportRecord rec;
  stamp(rec, "figure");
  rec.set_meta("figure", 3.0);
  rec.set_meta("r", 1.5);
  rec.set_meta("nbar", 0.0);
  rec.set_meta("J", J);
  rec.columns = {"d", "B", "h"};
  for (double d : linear_grid(0.0, 50.0, 501)) {
    const SqueezedStateParams p(1.5, d, 0.0);
    rec.add_row({d, bell_value(J, p), evolve_coefficients(p).h});
  }
  return rec;
}

ReportRecord figure_mixture(MixtureKind kind, int index, std::vector<double> p_values) {
  const auto J = default_threshold_j_grid();
  ReportRecord rec = mixture_curves(kind, 1.5, p_values, J);
  rec.set_meta("command", std::string("figure"));
  rec.set_meta("figure", static_cast<double>(index));
  return rec;
}

}  // namespace

ReportRecord figure(int index) {
  switch (index) {
    case 1: return figure_separability();
    case 2: return figure_bell_surface();
    case 3: return figure_bell_vs_diffusion();
    case 4: return figure_mixture(MixtureKind::WernerThermal, 4, {1.0, 0.95, 0.9, 0.5, 0.0});
    case 5: return figure_mixture(MixtureKind::PhaseDiffused, 5, {1.0, 0.5, 0.2, 0.0});
    default: throw DomainError("figure index must be 1..5, got " + std::to_string(index));
  }
}

}  // namespace cvbell::commands
