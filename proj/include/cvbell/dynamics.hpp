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

// Exact time evolution of the internally diffused two-mode squeezed state.
//
// The Wigner function obeys a linear Fokker-Planck equation (a quantum
// Ornstein-Uhlenbeck process) with drift A and diffusion D. Starting from the
// vacuum the solution stays Gaussian and is fully described by GaussianForm.
// Besides the closed form, this module provides two independent routes to the
// covariance: an RK4 integration of the moment equation and the Green-function
// propagator evaluated in the drift eigenbasis.

#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "cvbell/numerics.hpp"
#include "cvbell/phase_space.hpp"

namespace cvbell {

struct DriftDiffusionPair {
  Mat4 drift;
  Mat4 diffusion;
};

/// Drift matrix (diagonal -gamma/2, +kappa at (1,3), -kappa at (2,4)) and
/// diffusion matrix (gamma/4)(2 nbar + 1) I, in the real variables x1..x4.
DriftDiffusionPair drift_diffusion(double kappa, double gamma, double nbar);

/// Closed-form (c1, c2, h) at the given (r, d, nbar).
GaussianForm evolve_coefficients(const SqueezedStateParams& params);

/// {-(gamma+2kappa)/2 (x2), -(gamma-2kappa)/2 (x2)}, ascending.
std::array<double, 4> drift_eigenvalues(double gamma, double kappa);

enum class SteadyStateClass { SqueezedThermal, Thermal, None, BoundaryUndefined };

std::string_view to_string(SteadyStateClass c);

struct SteadyStateReport {
  bool exists = false;
  SteadyStateClass classification = SteadyStateClass::None;
  std::optional<GaussianForm> limit_form;
};

/// Long-time behaviour. A steady state exists iff gamma > 2 kappa; the
/// boundary gamma == 2 kappa is reported, not thrown.
SteadyStateReport steady_state(double gamma, double kappa, double nbar);

/// Covariance of the vacuum Wigner function, I/4.
Mat4 vacuum_covariance();
/// Covariance of the two-mode thermal state, (2 nbar + 1)/4 I.
Mat4 thermal_covariance(double nbar);

/// Covariance (inverse precision matrix) of the Wigner Gaussian of `form`.
Mat4 covariance_from_form(const GaussianForm& form);
/// Precision matrix: c1/h on the diagonal, c2/h at (1,3), -c2/h at (2,4).
Mat4 precision_from_form(const GaussianForm& form);
/// Inverse of covariance_from_form. Throws DomainError if `sigma` does not
/// have the structure of the model.
GaussianForm form_from_covariance(const Mat4& sigma);

/// Integrates dS/dt = A S + S A^T + D from the vacuum with `steps` RK4 steps.
///
/// A half-step companion run estimates the global error; if it exceeds the
/// oracle tolerance a ConvergenceError is thrown.
Mat4 covariance_ode_oracle(double kappa, double gamma, double nbar, double t, int steps);

/// e^{A t} of the model drift from its doubly degenerate eigenbasis.
Mat4 drift_exponential(double kappa, double gamma, double t);

/// S(t) = e^{At} S0 e^{A^T t} + Q(t), with Q evaluated analytically.
Mat4 propagate_covariance(const Mat4& sigma0, double kappa, double gamma, double nbar, double t);

/// propagate_covariance converted back to a GaussianForm.
GaussianForm propagate_green(const Mat4& sigma0, double kappa, double gamma, double nbar, double t);

}  // namespace cvbell
