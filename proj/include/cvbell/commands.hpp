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

// Report builders behind each CLI subcommand. Every record carries the
// subcommand name, its parameters, the library version and the tolerance set.

#pragma once

#include <span>

#include "cvbell/bell.hpp"
#include "cvbell/mixed_states.hpp"
#include "cvbell/phase_space.hpp"
#include "cvbell/report.hpp"

namespace cvbell::commands {

inline constexpr const char* kVersion = "1.0.0";

/// Adds command, version and every tolerance constant to the metadata.
void stamp(ReportRecord& record, std::string_view command);

ReportRecord coeffs(const SqueezedStateParams& params);
/// Samples t uniformly on [0, t_max] (samples >= 2) at fixed rates.
ReportRecord coeffs_scan(double kappa, double gamma, double nbar, double t_max, std::size_t samples);

ReportRecord bell(const SqueezedStateParams& params, std::span<const double> J_values);
ReportRecord maximize(const BellSearch& search);
ReportRecord separability(const SqueezedStateParams& params);
ReportRecord steady(double gamma, double kappa, double nbar);

/// B(J) curves of a mixture family, long format (p, J, B, Pi...).
ReportRecord mixture_curves(MixtureKind kind, double r, std::span<const double> p_values,
                            std::span<const double> J_values);
ReportRecord mixture_threshold(MixtureKind kind, double r, std::span<const double> J_values);
/// Small-J slope of the phase-diffused family next to 4 p sinh(2r).
ReportRecord phase_diffused_slope(double r, std::span<const double> p_values);

/// Data behind figures 1-5. Throws DomainError for other indices.
ReportRecord figure(int index);

/// J grid used by the threshold search of the phase-diffused family, which
/// violates at intensities of order p/20 and so needs to reach far below 1e-4.
std::vector<double> phase_diffused_threshold_j_grid();

}  // namespace cvbell::commands
