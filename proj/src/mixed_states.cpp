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

#include "cvbell/mixed_states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cvbell/errors.hpp"
#include "cvbell/numerics.hpp"
#include "cvbell/tolerances.hpp"

namespace cvbell {

namespace {

void require_squeezing(double r) {
  if (!std::isfinite(r) || r < 0.0) throw DomainError("r must be finite and >= 0, got " + std::to_string(r));
}

}  // namespace

std::string_view to_string(MixtureKind kind) {
  return kind == MixtureKind::WernerThermal ? "werner-thermal" : "phase-diffused";
}

void validate(const MixtureSpec& spec) {
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw DomainError("mixing weight p must lie in [0, 1]");
  require_squeezing(spec.r);
}

double thermal_marginal(std::complex<double> alpha, double r) {
  require_squeezing(r);
  const double c = std::cosh(2.0 * r);
  return (2.0 / std::numbers::pi) * std::exp(-2.0 * std::norm(alpha) / c) / c;
}

double werner_wigner(const TwoModePoint& point, const MixtureSpec& spec) {
  validate(spec);
  if (spec.kind != MixtureKind::WernerThermal) throw DomainError("werner_wigner: spec is not werner-thermal");
  const double product = thermal_marginal(point.alpha1, spec.r) * thermal_marginal(point.alpha2, spec.r);
  return spec.p * wigner_pure_2mss(point, spec.r) + (1.0 - spec.p) * product;
}

double phase_averaged_wigner(const TwoModePoint& point, double r) {
  require_squeezing(r);
  const double gauss = -2.0 * std::cosh(2.0 * r) * radial_term(point);
  const double x = 4.0 * std::abs(point.alpha1) * std::abs(point.alpha2) * std::sinh(2.0 * r);
  const double peak = 4.0 / (std::numbers::pi * std::numbers::pi);
  if (x > Tolerances::bessel_log_space) return peak * std::exp(gauss + log_bessel_i0(x));
  return peak * std::exp(gauss) * bessel_i0(x);
}

double phase_diffused_wigner(const TwoModePoint& point, const MixtureSpec& spec) {
  validate(spec);
  if (spec.kind != MixtureKind::PhaseDiffused) throw DomainError("phase_diffused_wigner: spec is not phase-diffused");
  return spec.p * wigner_pure_2mss(point, spec.r) + (1.0 - spec.p) * phase_averaged_wigner(point, spec.r);
}

WignerFunction mixture_evaluator(const MixtureSpec& spec) {
  validate(spec);
  if (spec.kind == MixtureKind::WernerThermal)
    return [spec](const TwoModePoint& p) { return werner_wigner(p, spec); };
  return [spec](const TwoModePoint& p) { return phase_diffused_wigner(p, spec); };
}

WignerFunction mixture_component_evaluator(MixtureKind kind, double r) {
  return mixture_evaluator(MixtureSpec{0.0, r, kind});
}

namespace {

double trapezoid_phase_average(const TwoModePoint& point, double r, int nodes) {
  const QuadratureRule rule = periodic_trapezoid(nodes, 2.0 * std::numbers::pi);
  const double w = 1.0 / (2.0 * std::numbers::pi);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const auto rot1 = std::polar(1.0, rule.nodes[i]);
    double inner = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const auto rot2 = std::polar(1.0, rule.nodes[j]);
      inner += rule.weights[j] * wigner_pure_2mss({point.alpha1 * rot1, point.alpha2 * rot2}, r);
    }
    sum += rule.weights[i] * inner;
  }
  return sum * w * w;
}

}  // namespace

double phase_average_quadrature_oracle(const TwoModePoint& point, double r, int nodes) {
  require_squeezing(r);
  if (nodes < 64) throw DomainError("phase_average_quadrature_oracle: need at least 64 nodes per phase");
  const double coarse = trapezoid_phase_average(point, r, nodes);
  const double fine = trapezoid_phase_average(point, r, 2 * nodes);
  if (std::abs(fine - coarse) > Tolerances::phase_average * std::abs(fine))
    throw ConvergenceError("phase_average_quadrature_oracle: " + std::to_string(nodes) +
                           " nodes per phase are not converged");
  return fine;
}

BellEvaluation mixture_bell(const MixtureSpec& spec, double J) {
  validate(spec);
  const std::string label = std::string(to_string(spec.kind)) + " p=" + std::to_string(spec.p) +
                            " r=" + std::to_string(spec.r);
  BellEvaluation mix = bell_combination(mixture_evaluator(spec), J, label);
  const double pure = bell_combination(pure_evaluator(spec.r), J).B;
  const double other = bell_combination(mixture_component_evaluator(spec.kind, spec.r), J).B;
  const double affine = spec.p * pure + (1.0 - spec.p) * other;
  if (std::abs(mix.B - affine) > Tolerances::mixture_affine * std::max(1.0, std::abs(mix.B)))
    throw InconsistencyError("mixture_bell: Bell value is not affine in p");
  return mix;
}

std::vector<double> default_threshold_j_grid() { return geometric_grid(1e-4, 1.0, 200); }

ViolationThreshold violation_threshold(MixtureKind kind, double r, std::span<const double> J_grid) {
  require_squeezing(r);
  if (J_grid.empty()) throw DomainError("violation_threshold: empty J grid");
  for (double J : J_grid)
    if (!(J >= 0.0)) throw DomainError("violation_threshold: J grid must be non-negative");

  auto max_b = [&](double p) {
    const WignerFunction w = mixture_evaluator(MixtureSpec{p, r, kind});
    double best = -std::numeric_limits<double>::infinity();
    for (double J : J_grid) best = std::max(best, bell_combination(w, J).B);
    return best;
  };

  ViolationThreshold out;
  out.max_b_pure = max_b(1.0);
  if (!(out.max_b_pure > 2.0)) {
    out.violates = false;
    out.p_star = 1.0;
    return out;
  }
  out.violates = true;
  double lo = 0.0;  // does not violate (or is the 0+ limit)
  double hi = 1.0;  // violates
  if (max_b(0.0) > 2.0) {
    out.p_star = 0.0;
    return out;
  }
  while (hi - lo > Tolerances::threshold_bisection) {
    const double mid = 0.5 * (lo + hi);
    if (max_b(mid) > 2.0)
      hi = mid;
    else
      lo = mid;
  }
  out.p_star = hi;
  return out;
}

double finite_dim_werner_threshold(int dim) {
  if (dim < 2) throw DomainError("finite_dim_werner_threshold: dimension must be >= 2");
  return 1.0 / (1.0 + dim);
}

}  // namespace cvbell
