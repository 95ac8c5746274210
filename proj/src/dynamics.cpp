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

#include "cvbell/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cvbell/errors.hpp"
#include "cvbell/tolerances.hpp"

namespace cvbell {

namespace {

void require_nonneg(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0)
    throw DomainError(std::string(name) + " must be finite and >= 0, got " + std::to_string(v));
}

// K with K^2 = I; the drift is A = -gamma/2 I + kappa K.
Mat4 coupling_matrix() {
  // clang-format off
  return Mat4::from_rows({0,  0, 1,  0,
                          0,  0, 0, -1,
                          1,  0, 0,  0,
                          0, -1, 0,  0});
  // clang-format on
}

}  // namespace

DriftDiffusionPair drift_diffusion(double kappa, double gamma, double nbar) {
  require_nonneg(kappa, "kappa");
  require_nonneg(gamma, "gamma");
  require_nonneg(nbar, "nbar");
  return {-0.5 * gamma * Mat4::identity() + kappa * coupling_matrix(),
          (0.25 * gamma * (2.0 * nbar + 1.0)) * Mat4::identity()};
}

GaussianForm evolve_coefficients(const SqueezedStateParams& params) {
  const double p1 = params.p1();
  const double p2 = params.p2();
  const double k = 2.0 * params.nbar() + 1.0;
  const double g1 = one_minus_exp_over(p1);
  const double g2 = one_minus_exp_over(p2);
  const double e1 = std::exp(-p1);
  const double e2 = std::exp(-p2);
  // p1 + p2 = 2d.
  const double sum = 2.0 * params.d();

  GaussianForm f;
  f.c1 = 2.0 * (e2 + e1) + k * sum * (g1 + g2);
  f.c2 = -2.0 * (e2 - e1) + k * sum * (g1 - g2);
  f.h = (e1 + k * 0.5 * sum * g1) * (e2 + k * 0.5 * sum * g2);
  return f;
}

std::array<double, 4> drift_eigenvalues(double gamma, double kappa) {
  require_nonneg(gamma, "gamma");
  require_nonneg(kappa, "kappa");
  const double fast = -0.5 * (gamma + 2.0 * kappa) + 0.0;
  const double slow = 0.5 * (2.0 * kappa - gamma);
  return {fast, fast, slow, slow};
}

std::string_view to_string(SteadyStateClass c) {
  switch (c) {
    case SteadyStateClass::SqueezedThermal: return "squeezed-thermal";
    case SteadyStateClass::Thermal: return "thermal";
    case SteadyStateClass::None: return "none";
    case SteadyStateClass::BoundaryUndefined: return "boundary-undefined";
  }
  return "unknown";
}

SteadyStateReport steady_state(double gamma, double kappa, double nbar) {
  require_nonneg(gamma, "gamma");
  require_nonneg(kappa, "kappa");
  require_nonneg(nbar, "nbar");
  SteadyStateReport out;
  if (gamma == 2.0 * kappa) {
    out.classification = SteadyStateClass::BoundaryUndefined;
    return out;
  }
  if (gamma < 2.0 * kappa) {
    out.classification = SteadyStateClass::None;
    return out;
  }
  out.exists = true;
  out.classification = kappa == 0.0 ? SteadyStateClass::Thermal : SteadyStateClass::SqueezedThermal;
  // Exponent -(2/k)(|a|^2 - q (a1 a2 + c.c.)), peak (4/pi^2)(1 - q^2)/k^2.
  const double q = 2.0 * kappa / gamma;
  const double k = 2.0 * nbar + 1.0;
  const double h = k * k / ((1.0 - q) * (1.0 + q));
  out.limit_form = GaussianForm{4.0 * h / k, -4.0 * h * q / k, h};
  return out;
}

Mat4 vacuum_covariance() { return 0.25 * Mat4::identity(); }

Mat4 thermal_covariance(double nbar) {
  require_nonneg(nbar, "nbar");
  return (0.25 * (2.0 * nbar + 1.0)) * Mat4::identity();
}

Mat4 precision_from_form(const GaussianForm& form) {
  validate(form);
  const double a = form.c1 / form.h;
  const double b = form.c2 / form.h;
  // clang-format off
  return Mat4::from_rows({a, 0,  b,  0,
                          0, a,  0, -b,
                          b, 0,  a,  0,
                          0, -b, 0,  a});
  // clang-format on
}

Mat4 covariance_from_form(const GaussianForm& form) {
  // The precision matrix is a K-structured 2x2 block, so its inverse is too:
  // entries a/(a^2 - b^2) and -b/(a^2 - b^2).
  validate(form);
  const double a = form.c1 / form.h;
  const double b = form.c2 / form.h;
  const double det = (a - b) * (a + b);
  const double s = a / det;
  const double t = -b / det;
  // clang-format off
  return Mat4::from_rows({s, 0,  t,  0,
                          0, s,  0, -t,
                          t, 0,  s,  0,
                          0, -t, 0,  s});
  // clang-format on
}

GaussianForm form_from_covariance(const Mat4& sigma) {
  if (!is_symmetric(sigma, Tolerances::symmetry))
    throw DomainError("form_from_covariance: covariance is not symmetric");
  const double scale = std::max(1.0, sigma.max_abs());
  const double tol = 1e-10 * scale;
  const double s = sigma(0, 0);
  const double t = sigma(0, 2);
  bool ok = std::abs(sigma(1, 1) - s) <= tol && std::abs(sigma(2, 2) - s) <= tol &&
            std::abs(sigma(3, 3) - s) <= tol && std::abs(sigma(1, 3) + t) <= tol &&
            std::abs(sigma(0, 1)) <= tol && std::abs(sigma(0, 3)) <= tol &&
            std::abs(sigma(1, 2)) <= tol && std::abs(sigma(2, 3)) <= tol;
  if (!ok) throw DomainError("form_from_covariance: covariance lacks the two-mode structure");
  // Principal variances s + t and s - t; normalization fixes h = 16 sqrt(det S).
  const double lp = s + t;
  const double lm = s - t;
  if (!(lp > 0.0 && lm > 0.0)) throw DomainError("form_from_covariance: not positive definite");
  const double h = 16.0 * lp * lm;
  // Precision entries a = s/(lp lm), b = -t/(lp lm); c = h * precision.
  return {16.0 * s, -16.0 * t, h};
}

Mat4 covariance_ode_oracle(double kappa, double gamma, double nbar, double t, int steps) {
  require_nonneg(t, "t");
  if (steps < Tolerances::ode_min_steps)
    throw DomainError("covariance_ode_oracle: need at least " +
                      std::to_string(Tolerances::ode_min_steps) + " steps");
  const auto [a, d] = drift_diffusion(kappa, gamma, nbar);
  const Mat4 fine = rk4_lyapunov(a, d, vacuum_covariance(), t, steps);
  const Mat4 coarse = rk4_lyapunov(a, d, vacuum_covariance(), t, steps / 2);
  // Fourth order: the fine-grid error is about 1/15 of the difference.
  const double err = max_abs_diff(fine, coarse) / 15.0;
  if (err > Tolerances::ode_oracle * std::max(1.0, fine.max_abs()))
    throw ConvergenceError("covariance_ode_oracle: " + std::to_string(steps) +
                           " steps do not reach the oracle tolerance (estimated error " +
                           std::to_string(err) + ")");
  return fine;
}

Mat4 drift_exponential(double kappa, double gamma, double t) {
  // Eigenprojectors of K: P+ = (I + K)/2 (eigenvalue -(gamma - 2kappa)/2),
  // P- = (I - K)/2 (eigenvalue -(gamma + 2kappa)/2).
  const Mat4 k = coupling_matrix();
  const Mat4 pp = 0.5 * (Mat4::identity() + k);
  const Mat4 pm = 0.5 * (Mat4::identity() - k);
  return std::exp(-0.5 * (gamma - 2.0 * kappa) * t) * pp + std::exp(-0.5 * (gamma + 2.0 * kappa) * t) * pm;
}

Mat4 propagate_covariance(const Mat4& sigma0, double kappa, double gamma, double nbar, double t) {
  require_nonneg(t, "t");
  const auto [a, d] = drift_diffusion(kappa, gamma, nbar);
  (void)a;
  const auto ev = sym4_eigenvalues(sigma0);
  if (!(ev[0] > 0.0)) throw DomainError("propagate_covariance: initial covariance not positive definite");

  const Mat4 prop = drift_exponential(kappa, gamma, t);
  // A is symmetric and D = delta I, so Q(t) = delta * sum_{+-} P+- t (1 - e^{-p+-})/p+-
  // with p+ = (gamma - 2kappa) t = p2 and p- = (gamma + 2kappa) t = p1.
  const Mat4 k = coupling_matrix();
  const Mat4 pp = 0.5 * (Mat4::identity() + k);
  const Mat4 pm = 0.5 * (Mat4::identity() - k);
  const double delta_t = d(0, 0) * t;
  const double p1 = (gamma + 2.0 * kappa) * t;
  const double p2 = (gamma - 2.0 * kappa) * t;
  const Mat4 q = delta_t * (one_minus_exp_over(p2) * pp + one_minus_exp_over(p1) * pm);
  return symmetrized(prop * sigma0 * prop.transposed() + q);
}

GaussianForm propagate_green(const Mat4& sigma0, double kappa, double gamma, double nbar, double t) {
  return form_from_covariance(propagate_covariance(sigma0, kappa, gamma, nbar, t));
}

}  // namespace cvbell
