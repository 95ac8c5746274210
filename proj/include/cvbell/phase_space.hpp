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

// Phase-space points, state parameters, the pure two-mode squeezed Wigner
// function, the general diffused Gaussian form, and the W/V matrix relations.

#pragma once

#include <array>
#include <complex>

#include "cvbell/numerics.hpp"

namespace cvbell {

/// Point (alpha1, alpha2) of two-mode phase space.
///
/// The real four-vector is (x1, x2, x3, x4) with alpha1 = x1 + i x2 and
/// alpha2 = x3 + i x4.
struct TwoModePoint {
  std::complex<double> alpha1;
  std::complex<double> alpha2;

  static constexpr TwoModePoint from_real(const std::array<double, 4>& x) {
    return {{x[0], x[1]}, {x[2], x[3]}};
  }
  constexpr std::array<double, 4> to_real() const {
    return {alpha1.real(), alpha1.imag(), alpha2.real(), alpha2.imag()};
  }
  friend bool operator==(const TwoModePoint&, const TwoModePoint&) = default;
};

/// Squeezing r = kappa t, diffusion d = gamma t and reservoir occupation nbar.
class SqueezedStateParams {
 public:
  /// Throws DomainError unless r, d, nbar are finite and non-negative.
  SqueezedStateParams(double r, double d, double nbar);

  /// Derives (r, d) from the raw rates kappa, gamma and interaction time t.
  static SqueezedStateParams from_rates(double kappa, double gamma, double t, double nbar);

  double r() const { return r_; }
  double d() const { return d_; }
  double nbar() const { return nbar_; }
  double p1() const { return d_ + 2.0 * r_; }
  double p2() const { return d_ - 2.0 * r_; }

 private:
  double r_;
  double d_;
  double nbar_;
};

/// Coefficients of the diffused Wigner function
///   W = (2/pi)^2 / h * exp[-(c1 (|a1|^2 + |a2|^2) + c2 (a1 a2 + c.c.)) / (2h)].
struct GaussianForm {
  double c1 = 4.0;
  double c2 = 0.0;
  double h = 1.0;
};

/// Throws DomainError unless h > 0 and c1 > |c2| (all finite).
void validate(const GaussianForm& form);

enum class Convention { W, V };

/// 4x4 symmetric matrix tagged with its convention. The W convention is the
/// quadratic form of the Wigner function, the V convention that of the
/// characteristic function.
struct CovarianceMatrix {
  Mat4 entries;
  Convention convention = Convention::W;
};

/// Mode occupation N and inter-mode squeezing correlation M.
struct ModeMoments {
  double n = 0.0;
  double m = 0.0;
};

/// 4/pi^2 exp[-2 cosh(2r)(|a1|^2 + |a2|^2) + 2 sinh(2r)(a1 a2 + c.c.)].
double wigner_pure_2mss(const TwoModePoint& point, double r);
double log_wigner_pure_2mss(const TwoModePoint& point, double r);

double wigner_gaussian_eval(const TwoModePoint& point, const GaussianForm& form);
double log_wigner_gaussian(const TwoModePoint& point, const GaussianForm& form);

/// Re(a1 a2 + a1* a2*) = 2 (x1 x3 - x2 x4).
double cross_term(const TwoModePoint& point);
/// |a1|^2 + |a2|^2.
double radial_term(const TwoModePoint& point);

CovarianceMatrix w_matrix_from_form(const GaussianForm& form);

/// V = W / sqrt(det W). Throws DomainError if W is not positive definite or
/// the pair does not satisfy W = E V^-1 E with E = diag(1, -1, 1, -1).
CovarianceMatrix v_from_w(const CovarianceMatrix& w);
/// W = E V^-1 E.
CovarianceMatrix w_from_v(const CovarianceMatrix& v);

/// Reads N = V00 - 1/2 and M = V03 from a V matrix with the two-mode pattern.
ModeMoments nm_from_v(const CovarianceMatrix& v);

/// N and M directly from the coefficients.
ModeMoments nm_from_form(const GaussianForm& form);

/// The parity-sign conjugation diag(1, -1, 1, -1).
Mat4 parity_sign_matrix();

}  // namespace cvbell
