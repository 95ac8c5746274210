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

#pragma once

namespace cvbell {

/// Every numeric threshold used by the library, in one place.
///
/// Reports embed these values so that output files record the exact tolerance
/// set they were produced under.
struct Tolerances {
  /// Absolute tolerance on the zero/equal pattern of a V-convention matrix.
  static constexpr double v_pattern = 1e-9;
  /// Relative residual of c1^2 - c2^2 = 16 h^2 below which a form is pure.
  static constexpr double purity = 1e-10;
  /// Agreement of closed-form and numeric separability eigenvalues
  /// (absolute below magnitude 1, relative above).
  static constexpr double eigen_routes = 1e-9;
  /// A separability margin this close to zero (relative to the matrix scale)
  /// counts as the non-strict boundary and is classified separable.
  static constexpr double separability_boundary = 1e-12;
  /// Relative tolerance for the W = E V^-1 E consistency check.
  static constexpr double w_v_relation = 1e-10;
  /// Asymmetry accepted by the 4x4 symmetric routines (relative to scale).
  static constexpr double symmetry = 1e-12;
  /// Off-diagonal residual at which the Jacobi sweep stops (relative).
  static constexpr double jacobi_residual = 1e-12;
  /// Below this |p|, (1 - e^-p)/p uses its Taylor series.
  static constexpr double taylor_switch = 1e-4;
  /// Series/asymptotic switch point of I0.
  static constexpr double bessel_switch = 15.0;
  /// I0 arguments above this are combined with their prefactor in log space.
  static constexpr double bessel_log_space = 700.0;
  /// Required agreement of the RK4 Lyapunov oracle with the closed form.
  static constexpr double ode_oracle = 1e-6;
  /// Minimum step count accepted by the RK4 covariance oracle.
  static constexpr int ode_min_steps = 1000;
  /// Nelder-Mead stops when the simplex diameter (unit-cube coordinates)
  /// falls below this.
  static constexpr double simplex_diameter = 1e-6;
  /// Affine-in-p check of mixture Bell values.
  static constexpr double mixture_affine = 1e-12;
  /// Relative agreement demanded of the periodic phase-average quadrature.
  static constexpr double phase_average = 1e-8;
  /// Absolute tolerance of the bisection on the mixing weight p.
  static constexpr double threshold_bisection = 1e-4;
  /// Intensity at which the small-J slope is extracted.
  static constexpr double small_j = 1e-6;
  /// |B(0) - 2| above this flags a slope as not anchored at the local bound.
  static constexpr double slope_anchor = 1e-12;
};

}  // namespace cvbell
