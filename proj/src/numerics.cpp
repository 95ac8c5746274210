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

#include "cvbell/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cvbell/errors.hpp"
#include "cvbell/tolerances.hpp"

namespace cvbell {

Mat4 Mat4::transposed() const {
  Mat4 t;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Mat4::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

Mat4& Mat4::operator+=(const Mat4& o) {
  for (std::size_t k = 0; k < 16; ++k) v_[k] += o.v_[k];
  return *this;
}

Mat4& Mat4::operator-=(const Mat4& o) {
  for (std::size_t k = 0; k < 16; ++k) v_[k] -= o.v_[k];
  return *this;
}

Mat4& Mat4::operator*=(double s) {
  for (double& x : v_) x *= s;
  return *this;
}

Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 c;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const double aik = a(i, k);
      for (int j = 0; j < 4; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

double max_abs_diff(const Mat4& a, const Mat4& b) { return (a - b).max_abs(); }

namespace {

// LU with partial pivoting; returns the sign-adjusted product of pivots and
// leaves the factors in `m`.
double lu_determinant(Mat4 m) {
  double det = 1.0;
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
    if (m(piv, col) == 0.0) return 0.0;
    if (piv != col) {
      for (int j = 0; j < 4; ++j) std::swap(m(piv, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (int r = col + 1; r < 4; ++r) {
      const double f = m(r, col) / m(col, col);
      for (int j = col; j < 4; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

}  // namespace

double determinant(const Mat4& m) { return lu_determinant(m); }

Mat4 inverse(const Mat4& m) {
  Mat4 a = m;
  Mat4 inv = Mat4::identity();
  const double scale = std::max(m.max_abs(), std::numeric_limits<double>::min());
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (std::abs(a(piv, col)) <= 1e-300 * scale || !std::isfinite(a(piv, col)))
      throw DomainError("inverse: matrix is singular");
    if (piv != col)
      for (int j = 0; j < 4; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const double d = a(col, col);
    for (int j = 0; j < 4; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (int j = 0; j < 4; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

bool is_symmetric(const Mat4& m, double rel_tol) {
  const double tol = rel_tol * std::max(1.0, m.max_abs());
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol) return false;
  return true;
}

Mat4 symmetrized(const Mat4& m) { return 0.5 * (m + m.transposed()); }

// ---------------------------------------------------------------------------
// Bessel I0

namespace detail {

double bessel_i0_series(double x) {
  // sum_k (x^2/4)^k / (k!)^2; all terms positive, so no cancellation.
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

double bessel_i0_asymptotic_factor(double x) {
  // 1 + 1/(8x) + 9/(2!(8x)^2) + ..., stopped at the smallest term.
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 200; ++k) {
    const double ratio = (2.0 * k + 1.0) * (2.0 * k + 1.0) / (8.0 * (k + 1.0) * x);
    if (ratio >= 1.0) break;
    term *= ratio;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

double bessel_i0_asymptotic(double x) {
  return std::exp(x) / std::sqrt(2.0 * std::numbers::pi * x) * bessel_i0_asymptotic_factor(x);
}

}  // namespace detail

double bessel_i0(double x) {
  if (!(x >= 0.0)) throw DomainError("bessel_i0: argument must be >= 0, got " + std::to_string(x));
  if (x < Tolerances::bessel_switch) return detail::bessel_i0_series(x);
  return detail::bessel_i0_asymptotic(x);
}

double log_bessel_i0(double x) {
  if (!(x >= 0.0)) throw DomainError("log_bessel_i0: argument must be >= 0, got " + std::to_string(x));
  if (x < Tolerances::bessel_switch) return std::log(detail::bessel_i0_series(x));
  return x - 0.5 * std::log(2.0 * std::numbers::pi * x) +
         std::log(detail::bessel_i0_asymptotic_factor(x));
}

double one_minus_exp_over(double p) {
  if (std::abs(p) < Tolerances::taylor_switch) {
    // 1 - p/2 + p^2/6 - p^3/24 + p^4/120 - p^5/720
    return 1.0 + p * (-1.0 / 2 + p * (1.0 / 6 + p * (-1.0 / 24 + p * (1.0 / 120 + p * (-1.0 / 720)))));
  }
  return -std::expm1(-p) / p;
}

// ---------------------------------------------------------------------------
// Lyapunov RK4

Mat4 rk4_lyapunov(const Mat4& drift, const Mat4& diffusion, const Mat4& sigma0, double t,
                  int steps) {
  if (steps < 1) throw DomainError("rk4_lyapunov: steps must be >= 1");
  const Mat4 drift_t = drift.transposed();
  auto rhs = [&](const Mat4& s) { return drift * s + s * drift_t + diffusion; };
  const double dt = t / steps;
  Mat4 s = sigma0;
  for (int n = 0; n < steps; ++n) {
    const Mat4 k1 = rhs(s);
    const Mat4 k2 = rhs(s + (0.5 * dt) * k1);
    const Mat4 k3 = rhs(s + (0.5 * dt) * k2);
    const Mat4 k4 = rhs(s + dt * k3);
    s += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    s = symmetrized(s);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Symmetric eigenvalues

namespace {

bool has_two_mode_pattern(const Mat4& m, double tol) {
  const double a = m(0, 0);
  const double b = m(0, 3);
  for (int i = 1; i < 4; ++i)
    if (std::abs(m(i, i) - a) > tol) return false;
  if (std::abs(m(1, 2) - b) > tol || std::abs(m(2, 1) - b) > tol || std::abs(m(3, 0) - b) > tol)
    return false;
  constexpr int zeros[][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 0}, {2, 3}, {3, 1}, {3, 2}};
  for (const auto& z : zeros)
    if (std::abs(m(z[0], z[1])) > tol) return false;
  return true;
}

}  // namespace

namespace detail {

std::array<double, 4> jacobi_eigenvalues(const Mat4& input) {
  Mat4 a = symmetrized(input);
  const double scale = std::max(a.max_abs(), std::numeric_limits<double>::min());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) off += a(i, j) * a(i, j);
    if (std::sqrt(off) <= Tolerances::jacobi_residual * 1e-3 * scale) break;
    for (int p = 0; p < 3; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(1.0, theta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;
        for (int k = 0; k < 4; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < 4; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  double off = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) off += a(i, j) * a(i, j);
  if (std::sqrt(off) > Tolerances::jacobi_residual * scale)
    throw ConvergenceError("jacobi_eigenvalues: off-diagonal residual did not converge");
  std::array<double, 4> ev{a(0, 0), a(1, 1), a(2, 2), a(3, 3)};
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace detail

std::array<double, 4> sym4_eigenvalues(const Mat4& m) {
  if (!is_symmetric(m, Tolerances::symmetry))
    throw DomainError("sym4_eigenvalues: matrix is not symmetric");
  const double tol = Tolerances::symmetry * std::max(1.0, m.max_abs());
  if (has_two_mode_pattern(m, tol)) {
    const double a = m(0, 0);
    const double b = std::abs(m(0, 3));
    return {a - b, a - b, a + b, a + b};
  }
  return detail::jacobi_eigenvalues(m);
}

// ---------------------------------------------------------------------------
// Matrix exponential

Mat4 matrix_exp4(const Mat4& a, double t) {
  Mat4 x = t * a;
  double norm = 0.0;
  for (int i = 0; i < 4; ++i) {
    double row = 0.0;
    for (int j = 0; j < 4; ++j) row += std::abs(x(i, j));
    norm = std::max(norm, row);
  }
  if (!std::isfinite(norm)) throw DomainError("matrix_exp4: non-finite entries");
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  x *= std::ldexp(1.0, -squarings);

  Mat4 result = Mat4::identity();
  Mat4 term = Mat4::identity();
  for (int k = 1; k <= 30; ++k) {
    term = (1.0 / k) * (term * x);
    result += term;
    if (term.max_abs() <= 1e-18 * result.max_abs()) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

// ---------------------------------------------------------------------------
// Quadrature

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  rule.lower = a;
  rule.upper = b;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = mid - half * z;
    rule.nodes[hi] = mid + half * z;
    rule.weights[lo] = half * w;
    rule.weights[hi] = half * w;
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(std::span<const double> breakpoints, int nodes_per_panel) {
  if (breakpoints.size() < 2) throw DomainError("composite_gauss_legendre: need two breakpoints");
  QuadratureRule rule;
  rule.lower = breakpoints.front();
  rule.upper = breakpoints.back();
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    if (!(breakpoints[k + 1] > breakpoints[k]))
      throw DomainError("composite_gauss_legendre: breakpoints must be strictly ascending");
    const QuadratureRule panel = gauss_legendre(nodes_per_panel, breakpoints[k], breakpoints[k + 1]);
    rule.nodes.insert(rule.nodes.end(), panel.nodes.begin(), panel.nodes.end());
    rule.weights.insert(rule.weights.end(), panel.weights.begin(), panel.weights.end());
  }
  return rule;
}

QuadratureRule periodic_trapezoid(int n, double period) {
  if (n < 1) throw DomainError("periodic_trapezoid: need at least one node");
  QuadratureRule rule;
  rule.domain = QuadratureRule::Domain::Periodic;
  rule.lower = 0.0;
  rule.upper = period;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.assign(static_cast<std::size_t>(n), period / n);
  for (int i = 0; i < n; ++i) rule.nodes[static_cast<std::size_t>(i)] = period * i / n;
  return rule;
}

}  // namespace cvbell
