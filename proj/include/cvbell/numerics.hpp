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

// Self-contained numeric kernel: small dense 4x4 algebra, the modified Bessel
// function I0, the stabilized (1 - e^-p)/p, a fixed-step RK4 integrator for
// the Lyapunov moment equation, and quadrature rules.

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace cvbell {

/// Dense row-major 4x4 real matrix.
class Mat4 {
 public:
  constexpr Mat4() = default;

  static constexpr Mat4 identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
  }
  static constexpr Mat4 diagonal(const std::array<double, 4>& d) {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
  }
  /// Row-major construction from 16 values.
  static constexpr Mat4 from_rows(const std::array<double, 16>& v) {
    Mat4 m;
    m.v_ = v;
    return m;
  }

  constexpr double& operator()(int i, int j) { return v_[static_cast<std::size_t>(4 * i + j)]; }
  constexpr double operator()(int i, int j) const { return v_[static_cast<std::size_t>(4 * i + j)]; }

  const std::array<double, 16>& data() const { return v_; }

  Mat4 transposed() const;
  double max_abs() const;

  Mat4& operator+=(const Mat4& o);
  Mat4& operator-=(const Mat4& o);
  Mat4& operator*=(double s);

  friend Mat4 operator+(Mat4 a, const Mat4& b) { return a += b; }
  friend Mat4 operator-(Mat4 a, const Mat4& b) { return a -= b; }
  friend Mat4 operator*(double s, Mat4 a) { return a *= s; }
  friend Mat4 operator*(Mat4 a, double s) { return a *= s; }
  friend Mat4 operator*(const Mat4& a, const Mat4& b);
  friend bool operator==(const Mat4&, const Mat4&) = default;

 private:
  std::array<double, 16> v_{};
};

double max_abs_diff(const Mat4& a, const Mat4& b);
double determinant(const Mat4& m);
/// Gauss-Jordan inverse with partial pivoting. Throws DomainError if singular.
Mat4 inverse(const Mat4& m);
bool is_symmetric(const Mat4& m, double rel_tol);
Mat4 symmetrized(const Mat4& m);

/// Modified Bessel function of the first kind, order zero. x >= 0.
double bessel_i0(double x);
/// log I0(x), finite for every x up to at least 1e8.
double log_bessel_i0(double x);

namespace detail {
double bessel_i0_series(double x);
/// e^-x * sqrt(2 pi x) * I0(x) from the optimally truncated asymptotic series.
double bessel_i0_asymptotic_factor(double x);
double bessel_i0_asymptotic(double x);
}  // namespace detail

/// (1 - e^-p) / p, continuous through the removable singularity at p = 0.
double one_minus_exp_over(double p);

/// Classical RK4 for dS/dt = A S + S A^T + D, symmetrized after every step.
Mat4 rk4_lyapunov(const Mat4& drift, const Mat4& diffusion, const Mat4& sigma0,
                  double t, int steps);

/// Eigenvalues of a symmetric 4x4 matrix, ascending.
///
/// Matrices with the two-mode pattern (equal diagonal a, anti-diagonal b,
/// zeros elsewhere) are split exactly into {a-|b|, a-|b|, a+|b|, a+|b|}; all
/// others go through a cyclic Jacobi sweep. Throws DomainError on asymmetric
/// input.
std::array<double, 4> sym4_eigenvalues(const Mat4& m);

namespace detail {
std::array<double, 4> jacobi_eigenvalues(const Mat4& m);
}  // namespace detail

/// exp(A t) by scaling and squaring of a truncated Taylor series.
Mat4 matrix_exp4(const Mat4& a, double t);

/// Nodes and weights of a one-dimensional rule.
struct QuadratureRule {
  enum class Domain { Interval, Periodic };

  std::vector<double> nodes;
  std::vector<double> weights;
  Domain domain = Domain::Interval;
  double lower = 0.0;
  double upper = 0.0;

  double measure() const { return upper - lower; }

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);
/// Gauss-Legendre panels between consecutive ascending breakpoints.
QuadratureRule composite_gauss_legendre(std::span<const double> breakpoints,
                                        int nodes_per_panel);
/// Equal-weight trapezoidal rule on the circle [0, period).
QuadratureRule periodic_trapezoid(int n, double period);

}  // namespace cvbell
