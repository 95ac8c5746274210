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

// Non-Gaussian convex mixtures of the pure two-mode squeezed state:
//   - continuous-variable Werner state  p W_2mss + (1-p) W_T(a1) W_T(a2),
//   - phase-diffused state              p W_2mss + (1-p) Wbar,
// where W_T is the single-mode thermal marginal and Wbar the average of
// W_2mss over both mode phases.

#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "cvbell/bell.hpp"
#include "cvbell/phase_space.hpp"

namespace cvbell {

enum class MixtureKind { WernerThermal, PhaseDiffused };

std::string_view to_string(MixtureKind kind);

struct MixtureSpec {
  double p = 1.0;
  double r = 0.0;
  MixtureKind kind = MixtureKind::WernerThermal;
};

/// Throws DomainError unless 0 <= p <= 1 and r >= 0.
void validate(const MixtureSpec& spec);

/// (2/pi) exp(-2|a|^2 / cosh 2r) / cosh 2r.
double thermal_marginal(std::complex<double> alpha, double r);

double werner_wigner(const TwoModePoint& point, const MixtureSpec& spec);

/// (4/pi^2) exp(-2 cosh(2r)(|a1|^2 + |a2|^2)) I0(4 |a1||a2| sinh 2r).
double phase_averaged_wigner(const TwoModePoint& point, double r);

double phase_diffused_wigner(const TwoModePoint& point, const MixtureSpec& spec);

/// Evaluator for the mixture described by `spec`.
WignerFunction mixture_evaluator(const MixtureSpec& spec);
/// Evaluator for the p = 0 component of `kind` at squeezing r.
WignerFunction mixture_component_evaluator(MixtureKind kind, double r);

/// Double phase average of W_2mss by the trapezoidal rule with `nodes` points
/// per phase. The result is compared against a run with 2*nodes; a relative
/// change above the phase-average tolerance throws ConvergenceError.
double phase_average_quadrature_oracle(const TwoModePoint& point, double r, int nodes);

/// Bell combination of the mixture. The affine decomposition
/// B = p B_2mss + (1-p) B_component is checked and an InconsistencyError is
/// thrown if it fails.
BellEvaluation mixture_bell(const MixtureSpec& spec, double J);

struct ViolationThreshold {
  /// False when even p = 1 does not exceed 2 on the grid.
  bool violates = false;
  /// Smallest mixing weight that still violates, to the bisection tolerance.
  double p_star = 1.0;
  /// max_J B at p = 1.
  double max_b_pure = 0.0;
};

/// 200 geometrically spaced intensities on [1e-4, 1].
std::vector<double> default_threshold_j_grid();

/// Bisection on p of "max over J_grid of B(p, J) > 2".
ViolationThreshold violation_threshold(MixtureKind kind, double r, std::span<const double> J_grid);

inline ViolationThreshold werner_violation_threshold(double r, std::span<const double> J_grid) {
  return violation_threshold(MixtureKind::WernerThermal, r, J_grid);
}

/// 1/(1 + dim): the mixing weight above which a finite-dimensional Werner
/// state is entangled.
double finite_dim_werner_threshold(int dim);

}  // namespace cvbell
