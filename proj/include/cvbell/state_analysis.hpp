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

// Purity and separability of the diffused Gaussian states.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "cvbell/phase_space.hpp"

namespace cvbell {

struct PurityReport {
  bool pure = false;
  /// |c1^2 - c2^2 - 16 h^2| / (16 h^2).
  double residual = 0.0;
};

PurityReport is_pure(const GaussianForm& form);

struct SeparabilityReport {
  /// Numeric eigenvalues of V - I/2, ascending.
  std::array<double, 4> eigenvalues{};
  /// Closed-form doubly degenerate eigenvalues.
  double e12 = 0.0;
  double e34 = 0.0;
  /// Smallest eigenvalue of V - I/2.
  double margin = 0.0;
  bool separable = false;
};

/// Numeric eigenvalues of V - I/2 for an arbitrary V-convention matrix.
/// Margins within the boundary tolerance of zero are classified separable.
SeparabilityReport classify_v(const CovarianceMatrix& v);

/// Separability of the state at `params`: V is built from the closed-form
/// coefficients, V - I/2 is eigensolved, and the closed-form eigenvalues are
/// checked against it. Throws InconsistencyError if the routes disagree.
SeparabilityReport separability_eigenvalues(const SqueezedStateParams& params);

/// e12 = (1 - e^-p2)(d nbar + r)/p2 and e34 = (1 - e^-p1)(d nbar - r)/p1.
std::array<double, 2> closed_form_separability_eigenvalues(const SqueezedStateParams& params);

struct SeparabilityMap {
  double r = 0.0;
  std::vector<double> d_grid;
  std::vector<double> nbar_grid;
  /// separable[i][j] for d_grid[i], nbar_grid[j].
  std::vector<std::vector<bool>> separable;
  std::vector<std::vector<double>> margin;
  /// Per d row: n-bar where the margin crosses zero, by linear interpolation
  /// between the bracketing cells. Empty if the row never changes verdict.
  std::vector<std::optional<double>> boundary_nbar;
};

SeparabilityMap separability_map(double r, std::span<const double> d_grid,
                                 std::span<const double> nbar_grid);

}  // namespace cvbell
