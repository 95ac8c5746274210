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

#include "cvbell/phase_space.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cvbell/errors.hpp"
#include "cvbell/tolerances.hpp"

namespace cvbell {

namespace {

const double kLogPeak = std::log(4.0 / (std::numbers::pi * std::numbers::pi));

void require_nonneg(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0)
    throw DomainError(std::string(name) + " must be finite and >= 0, got " + std::to_string(v));
}

void require_convention(const CovarianceMatrix& m, Convention c, const char* op) {
  if (m.convention != c)
    throw DomainError(std::string(op) + ": wrong matrix convention");
}

}  // namespace

SqueezedStateParams::SqueezedStateParams(double r, double d, double nbar) : r_(r), d_(d), nbar_(nbar) {
  require_nonneg(r, "r");
  require_nonneg(d, "d");
  require_nonneg(nbar, "nbar");
}

SqueezedStateParams SqueezedStateParams::from_rates(double kappa, double gamma, double t, double nbar) {
  require_nonneg(kappa, "kappa");
  require_nonneg(gamma, "gamma");
  require_nonneg(t, "t");
  return {kappa * t, gamma * t, nbar};
}

void validate(const GaussianForm& form) {
  if (!std::isfinite(form.c1) || !std::isfinite(form.c2) || !std::isfinite(form.h))
    throw DomainError("GaussianForm: non-finite coefficient");
  if (!(form.h > 0.0)) throw DomainError("GaussianForm: h must be > 0");
  if (!(form.c1 > std::abs(form.c2)))
    throw DomainError("GaussianForm: c1 must exceed |c2| (non-normalizable)");
}

double cross_term(const TwoModePoint& p) {
  return 2.0 * (p.alpha1 * p.alpha2).real();
}

double radial_term(const TwoModePoint& p) {
  return std::norm(p.alpha1) + std::norm(p.alpha2);
}

double log_wigner_pure_2mss(const TwoModePoint& point, double r) {
  require_nonneg(r, "r");
  return kLogPeak - 2.0 * std::cosh(2.0 * r) * radial_term(point) +
         2.0 * std::sinh(2.0 * r) * cross_term(point);
}

double wigner_pure_2mss(const TwoModePoint& point, double r) {
  return std::exp(log_wigner_pure_2mss(point, r));
}

double log_wigner_gaussian(const TwoModePoint& point, const GaussianForm& form) {
  validate(form);
  const double f = form.c1 * radial_term(point) + form.c2 * cross_term(point);
  return kLogPeak - std::log(form.h) - f / (2.0 * form.h);
}

double wigner_gaussian_eval(const TwoModePoint& point, const GaussianForm& form) {
  return std::exp(log_wigner_gaussian(point, form));
}

Mat4 parity_sign_matrix() { return Mat4::diagonal({1.0, -1.0, 1.0, -1.0}); }

CovarianceMatrix w_matrix_from_form(const GaussianForm& form) {
  validate(form);
  const double s = 1.0 / (2.0 * form.h);
  const double a = s * form.c1;
  const double b = s * form.c2;
  // clang-format off
  return {Mat4::from_rows({a, 0, 0, b,
                           0, a, b, 0,
                           0, b, a, 0,
                           b, 0, 0, a}),
          Convention::W};
  // clang-format on
}

CovarianceMatrix v_from_w(const CovarianceMatrix& w) {
  require_convention(w, Convention::W, "v_from_w");
  const auto ev = sym4_eigenvalues(w.entries);
  if (!(ev[0] > 0.0)) throw DomainError("v_from_w: W is not positive definite");
  const double det = determinant(w.entries);
  CovarianceMatrix v{(1.0 / std::sqrt(det)) * w.entries, Convention::V};

  const Mat4 e = parity_sign_matrix();
  const Mat4 back = e * inverse(v.entries) * e;
  if (max_abs_diff(back, w.entries) > Tolerances::w_v_relation * std::max(1.0, w.entries.max_abs()))
    throw DomainError("v_from_w: W does not satisfy W = E V^-1 E for V = W/sqrt(det W)");
  return v;
}

CovarianceMatrix w_from_v(const CovarianceMatrix& v) {
  require_convention(v, Convention::V, "w_from_v");
  const Mat4 e = parity_sign_matrix();
  return {symmetrized(e * inverse(v.entries) * e), Convention::W};
}

ModeMoments nm_from_v(const CovarianceMatrix& v) {
  require_convention(v, Convention::V, "nm_from_v");
  const Mat4& m = v.entries;
  constexpr double tol = Tolerances::v_pattern;
  const double a = m(0, 0);
  const double b = m(0, 3);
  bool ok = true;
  for (int i = 1; i < 4; ++i) ok = ok && std::abs(m(i, i) - a) <= tol;
  ok = ok && std::abs(m(1, 2) - b) <= tol && std::abs(m(2, 1) - b) <= tol &&
       std::abs(m(3, 0) - b) <= tol;
  constexpr int zeros[][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 0}, {2, 3}, {3, 1}, {3, 2}};
  for (const auto& z : zeros) ok = ok && std::abs(m(z[0], z[1])) <= tol;
  if (!ok) throw DomainError("nm_from_v: matrix does not have the two-mode V pattern");
  const ModeMoments out{a - 0.5, b};
  if (out.n < -tol) throw DomainError("nm_from_v: negative mode occupation");
  return out;
}

ModeMoments nm_from_form(const GaussianForm& form) {
  validate(form);
  const double denom = (form.c1 - form.c2) * (form.c1 + form.c2);
  return {2.0 * form.h * form.c1 / denom - 0.5, 2.0 * form.h * form.c2 / denom};
}

}  // namespace cvbell
