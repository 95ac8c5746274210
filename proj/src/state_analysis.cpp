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

#include "cvbell/state_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cvbell/dynamics.hpp"
#include "cvbell/errors.hpp"
#include "cvbell/parallel.hpp"
#include "cvbell/tolerances.hpp"

namespace cvbell {

PurityReport is_pure(const GaussianForm& form) {
  validate(form);
  const double target = 16.0 * form.h * form.h;
  const double residual = std::abs((form.c1 - form.c2) * (form.c1 + form.c2) - target) / target;
  return {residual < Tolerances::purity, residual};
}

SeparabilityReport classify_v(const CovarianceMatrix& v) {
  if (v.convention != Convention::V) throw DomainError("classify_v: expected a V-convention matrix");
  SeparabilityReport out;
  out.eigenvalues = sym4_eigenvalues(v.entries - 0.5 * Mat4::identity());
  out.margin = out.eigenvalues[0];
  const double tol = Tolerances::separability_boundary * std::max(1.0, v.entries.max_abs());
  out.separable = out.margin >= -tol;
  return out;
}

std::array<double, 2> closed_form_separability_eigenvalues(const SqueezedStateParams& p) {
  const double dn = p.d() * p.nbar();
  return {one_minus_exp_over(p.p2()) * (dn + p.r()), one_minus_exp_over(p.p1()) * (dn - p.r())};
}

SeparabilityReport separability_eigenvalues(const SqueezedStateParams& params) {
  const GaussianForm form = evolve_coefficients(params);
  // sqrt(det W) = 4 / h by the normalization c1^2 - c2^2 = 16 h; the direct
  // determinant loses digits once c1 + c2 cancels at large r.
  const CovarianceMatrix w = w_matrix_from_form(form);
  SeparabilityReport out = classify_v({0.25 * form.h * w.entries, Convention::V});
  const auto [e12, e34] = closed_form_separability_eigenvalues(params);
  out.e12 = e12;
  out.e34 = e34;

  std::array<double, 4> closed{e12, e12, e34, e34};
  std::sort(closed.begin(), closed.end());
  for (std::size_t i = 0; i < 4; ++i) {
    const double diff = std::abs(closed[i] - out.eigenvalues[i]);
    if (diff > Tolerances::eigen_routes * std::max(1.0, std::abs(closed[i])))
      throw InconsistencyError("separability_eigenvalues: closed-form eigenvalue " +
                               std::to_string(closed[i]) + " disagrees with numeric " +
                               std::to_string(out.eigenvalues[i]));
  }
  return out;
}

SeparabilityMap separability_map(double r, std::span<const double> d_grid,
                                 std::span<const double> nbar_grid) {
  if (d_grid.empty() || nbar_grid.empty()) throw DomainError("separability_map: empty grid");
  if (!std::is_sorted(d_grid.begin(), d_grid.end()) ||
      !std::is_sorted(nbar_grid.begin(), nbar_grid.end()))
    throw DomainError("separability_map: grids must be ascending");

  SeparabilityMap map;
  map.r = r;
  map.d_grid.assign(d_grid.begin(), d_grid.end());
  map.nbar_grid.assign(nbar_grid.begin(), nbar_grid.end());
  const std::size_t nd = d_grid.size();
  const std::size_t nn = nbar_grid.size();
  std::vector<SeparabilityReport> cells(nd * nn);
  parallel_for(nd * nn, [&](std::size_t k) {
    cells[k] = separability_eigenvalues(SqueezedStateParams(r, d_grid[k / nn], nbar_grid[k % nn]));
  });

  map.separable.assign(nd, std::vector<bool>(nn));
  map.margin.assign(nd, std::vector<double>(nn));
  map.boundary_nbar.assign(nd, std::nullopt);
  for (std::size_t i = 0; i < nd; ++i) {
    for (std::size_t j = 0; j < nn; ++j) {
      map.separable[i][j] = cells[i * nn + j].separable;
      map.margin[i][j] = cells[i * nn + j].margin;
    }
    for (std::size_t j = 1; j < nn; ++j) {
      if (map.separable[i][j] == map.separable[i][j - 1]) continue;
      const double m0 = map.margin[i][j - 1];
      const double m1 = map.margin[i][j];
      const double x0 = nbar_grid[j - 1];
      const double x1 = nbar_grid[j];
      map.boundary_nbar[i] = m1 == m0 ? x1 : x0 + (x1 - x0) * (-m0) / (m1 - m0);
      break;
    }
  }
  return map;
}

}  // namespace cvbell
