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

// Displaced-parity correlations and the four-point Bell combination
//
//   B = Pi(0,0) + Pi(sqrt J, 0) + Pi(0, -sqrt J) - Pi(sqrt J, -sqrt J),
//   Pi(a1, a2) = (pi/2)^2 W(a1, a2),
//
// for any Wigner function, plus a grid-and-simplex maximizer over (J, r, d, nbar).

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cvbell/phase_space.hpp"

namespace cvbell {

/// Any normalized two-mode Wigner function. Must be safe to call concurrently.
using WignerFunction = std::function<double(const TwoModePoint&)>;

WignerFunction pure_evaluator(double r);
WignerFunction gaussian_evaluator(const GaussianForm& form);

struct BellSettings {
  double J = 0.0;

  /// (0,0), (sqrt J, 0), (0, -sqrt J), (sqrt J, -sqrt J).
  std::array<TwoModePoint, 4> points() const;
};

struct BellEvaluation {
  double B = 0.0;
  /// Pi at the four points, in the order of BellSettings::points().
  std::array<double, 4> correlations{};
  BellSettings settings;
  std::string state;
};

double parity_correlation(const WignerFunction& wigner, const TwoModePoint& point);

/// Throws DomainError for negative or non-finite J.
BellEvaluation bell_combination(const WignerFunction& wigner, double J,
                                std::string state_description = {});

/// (1/h)[1 + 2 exp(-J c1/(2h)) - exp(-J (c1 - c2)/h)], the four-point
/// combination of the diffused Gaussian in closed form.
double bell_closed_form(const GaussianForm& form, double J);

/// B of the diffused Gaussian state at (J, r, d, nbar), by four-point assembly.
double bell_value(double J, const SqueezedStateParams& params);

struct BellSurface {
  double r = 0.0;
  double nbar = 0.0;
  std::vector<double> J_grid;
  std::vector<double> d_grid;
  /// values[i][j] = B(J_grid[j], d_grid[i]).
  std::vector<std::vector<double>> values;
};

BellSurface bell_surface(double r, double nbar, std::span<const double> J_grid,
                         std::span<const double> d_grid);

/// Parameter slots, in the lexicographic order used for tie-breaking.
enum class BellParameter : std::size_t { J = 0, R = 1, D = 2, NBar = 3 };

std::string_view to_string(BellParameter p);

struct BellSearch {
  std::array<bool, 4> free{};
  /// Values of the parameters that are not free.
  std::array<double, 4> fixed{0.01, 1.5, 0.0, 0.0};
  std::array<double, 4> lower{1e-4, 0.0, 0.0, 0.0};
  std::array<double, 4> upper{1.0, 3.0, 5.0, 2.0};
  /// Coarse-scan points per free dimension (at least 32).
  int grid_points = 32;

  void set_free(BellParameter p, bool value = true) { free[static_cast<std::size_t>(p)] = value; }
};

struct BellMaximum {
  /// (J, r, d, nbar) at the maximum.
  std::array<double, 4> argmax{};
  double value = 0.0;
  std::array<double, 4> grid_argmax{};
  double grid_value = 0.0;
  std::size_t evaluations = 0;
  int simplex_iterations = 0;
  bool simplex_converged = false;
};

/// Coarse grid scan (geometric in J when its lower bound is positive) followed
/// by Nelder-Mead refinement in unit-cube coordinates. Deterministic; equal
/// grid values resolve to the lexicographically smallest (J, r, d, nbar).
/// Throws DomainError if no free parameter is given or a range is empty.
BellMaximum maximize_bell(const BellSearch& search);

struct SlopeEstimate {
  double slope = 0.0;
  double b0 = 0.0;
  /// False when B(0) != 2, i.e. the linear term is not measured from the
  /// local-realism bound.
  bool anchored = false;
};

/// lim (B(J) - B(0))/J as J -> 0, Richardson-extrapolated from J = 1e-6 and
/// J = 5e-7.
SlopeEstimate small_j_slope(const WignerFunction& wigner);

/// n points from lo to hi, evenly spaced in log (lo > 0).
std::vector<double> geometric_grid(double lo, double hi, std::size_t n);
/// n evenly spaced points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

}  // namespace cvbell
