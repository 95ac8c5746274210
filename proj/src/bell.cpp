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

#include "cvbell/bell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "cvbell/dynamics.hpp"
#include "cvbell/errors.hpp"
#include "cvbell/parallel.hpp"
#include "cvbell/tolerances.hpp"

namespace cvbell {

namespace {

constexpr double kParityScale = std::numbers::pi * std::numbers::pi / 4.0;

void require_intensity(double J) {
  if (!std::isfinite(J) || J < 0.0)
    throw DomainError("Bell intensity J must be finite and >= 0, got " + std::to_string(J));
}

}  // namespace

WignerFunction pure_evaluator(double r) {
  if (!std::isfinite(r) || r < 0.0) throw DomainError("pure_evaluator: r must be >= 0");
  return [r](const TwoModePoint& p) { return wigner_pure_2mss(p, r); };
}

WignerFunction gaussian_evaluator(const GaussianForm& form) {
  validate(form);
  return [form](const TwoModePoint& p) { return wigner_gaussian_eval(p, form); };
}

std::array<TwoModePoint, 4> BellSettings::points() const {
  const double a = std::sqrt(J);
  return {TwoModePoint{{0, 0}, {0, 0}}, TwoModePoint{{a, 0}, {0, 0}},
          TwoModePoint{{0, 0}, {-a, 0}}, TwoModePoint{{a, 0}, {-a, 0}}};
}

double parity_correlation(const WignerFunction& wigner, const TwoModePoint& point) {
  return kParityScale * wigner(point);
}

BellEvaluation bell_combination(const WignerFunction& wigner, double J, std::string state_description) {
  require_intensity(J);
  BellEvaluation out;
  out.settings.J = J;
  out.state = std::move(state_description);
  const auto pts = out.settings.points();
  for (std::size_t i = 0; i < 4; ++i) out.correlations[i] = parity_correlation(wigner, pts[i]);
  const auto& c = out.correlations;
  out.B = c[0] + c[1] + c[2] - c[3];
  return out;
}

double bell_closed_form(const GaussianForm& form, double J) {
  validate(form);
  require_intensity(J);
  return (1.0 + 2.0 * std::exp(-J * form.c1 / (2.0 * form.h)) -
          std::exp(-J * (form.c1 - form.c2) / form.h)) /
         form.h;
}

double bell_value(double J, const SqueezedStateParams& params) {
  require_intensity(J);
  const GaussianForm form = evolve_coefficients(params);
  validate(form);
  const double a = std::sqrt(J);
  const double c0 = wigner_gaussian_eval({{0, 0}, {0, 0}}, form);
  const double c1 = wigner_gaussian_eval({{a, 0}, {0, 0}}, form);
  const double c2 = wigner_gaussian_eval({{0, 0}, {-a, 0}}, form);
  const double c3 = wigner_gaussian_eval({{a, 0}, {-a, 0}}, form);
  return kParityScale * c0 + kParityScale * c1 + kParityScale * c2 - kParityScale * c3;
}

BellSurface bell_surface(double r, double nbar, std::span<const double> J_grid,
                         std::span<const double> d_grid) {
  if (J_grid.empty() || d_grid.empty()) throw DomainError("bell_surface: empty grid");
  if (!std::is_sorted(J_grid.begin(), J_grid.end()) || !std::is_sorted(d_grid.begin(), d_grid.end()))
    throw DomainError("bell_surface: grids must be ascending");
  if (J_grid.front() < 0.0 || d_grid.front() < 0.0)
    throw DomainError("bell_surface: grids must be non-negative");

  BellSurface s;
  s.r = r;
  s.nbar = nbar;
  s.J_grid.assign(J_grid.begin(), J_grid.end());
  s.d_grid.assign(d_grid.begin(), d_grid.end());
  const std::size_t nj = J_grid.size();
  std::vector<double> flat(d_grid.size() * nj);
  parallel_for(flat.size(), [&](std::size_t k) {
    flat[k] = bell_value(J_grid[k % nj], SqueezedStateParams(r, d_grid[k / nj], nbar));
  });
  s.values.resize(d_grid.size());
  for (std::size_t i = 0; i < d_grid.size(); ++i)
    s.values[i].assign(flat.begin() + static_cast<std::ptrdiff_t>(i * nj),
                       flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * nj));
  return s;
}

std::string_view to_string(BellParameter p) {
  switch (p) {
    case BellParameter::J: return "J";
    case BellParameter::R: return "r";
    case BellParameter::D: return "d";
    case BellParameter::NBar: return "nbar";
  }
  return "?";
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi >= lo) || n == 0) throw DomainError("geometric_grid: need 0 < lo <= hi, n > 0");
  if (n == 1) return {lo};
  std::vector<double> g(n);
  const double step = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo * std::exp(step * static_cast<double>(i));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  if (!(hi >= lo) || n == 0) throw DomainError("linear_grid: need lo <= hi, n > 0");
  if (n == 1) return {lo};
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  g.back() = hi;
  return g;
}

// ---------------------------------------------------------------------------
// Maximizer

namespace {

// Maps unit-cube coordinates of the free parameters onto (J, r, d, nbar).
class SearchSpace {
 public:
  explicit SearchSpace(const BellSearch& s) : search_(s) {
    for (std::size_t k = 0; k < 4; ++k) {
      if (!s.free[k]) {
        if (!std::isfinite(s.fixed[k]) || s.fixed[k] < 0.0)
          throw DomainError("maximize_bell: fixed " + std::string(to_string(BellParameter{k})) +
                            " must be finite and >= 0");
        continue;
      }
      if (!std::isfinite(s.lower[k]) || !std::isfinite(s.upper[k]))
        throw DomainError("maximize_bell: bounds must be finite");
      if (s.lower[k] < 0.0 || s.upper[k] < s.lower[k])
        throw DomainError("maximize_bell: empty feasible range for " +
                          std::string(to_string(BellParameter{k})));
      free_.push_back(k);
    }
    if (free_.empty()) throw DomainError("maximize_bell: no free parameter");
    geometric_j_ = s.free[0] && s.lower[0] > 0.0;
  }

  std::size_t dims() const { return free_.size(); }
  std::size_t slot(std::size_t i) const { return free_[i]; }

  double coordinate_to_value(std::size_t i, double u) const {
    const std::size_t k = free_[i];
    const double lo = search_.lower[k];
    const double hi = search_.upper[k];
    if (k == 0 && geometric_j_) return lo * std::pow(hi / lo, u);
    return lo + (hi - lo) * u;
  }

  std::array<double, 4> point(std::span<const double> u) const {
    std::array<double, 4> x = search_.fixed;
    for (std::size_t i = 0; i < free_.size(); ++i) {
      x[free_[i]] = coordinate_to_value(i, std::clamp(u[i], 0.0, 1.0));
    }
    return x;
  }

  static double value(const std::array<double, 4>& x) {
    return bell_value(x[0], SqueezedStateParams(x[1], x[2], x[3]));
  }

 private:
  const BellSearch& search_;
  std::vector<std::size_t> free_;
  bool geometric_j_ = false;
};

struct Vertex {
  std::vector<double> u;
  double f;  // -B
};

}  // namespace

BellMaximum maximize_bell(const BellSearch& search) {
  if (search.grid_points < 32) throw DomainError("maximize_bell: need at least 32 grid points per dimension");
  const SearchSpace space(search);
  const std::size_t dims = space.dims();
  const auto n = static_cast<std::size_t>(search.grid_points);

  BellMaximum out;

  // Coarse scan. Index order is lexicographic in (J, r, d, nbar) because the
  // free slots are stored in ascending order and every axis is ascending.
  std::size_t cells = 1;
  for (std::size_t i = 0; i < dims; ++i) cells *= n;
  std::vector<double> values(cells);
  auto cell_coords = [&](std::size_t index) {
    std::vector<double> u(dims);
    for (std::size_t i = dims; i-- > 0;) {
      u[i] = static_cast<double>(index % n) / static_cast<double>(n - 1);
      index /= n;
    }
    return u;
  };
  parallel_for(cells, [&](std::size_t idx) { values[idx] = SearchSpace::value(space.point(cell_coords(idx))); });
  out.evaluations = cells;

  std::size_t best = 0;
  for (std::size_t idx = 1; idx < cells; ++idx)
    if (values[idx] > values[best]) best = idx;
  out.grid_value = values[best];
  const std::vector<double> start = cell_coords(best);
  out.grid_argmax = space.point(start);

  // Nelder-Mead on f = -B with trial points projected into the unit cube.
  auto evaluate = [&](std::vector<double> u) {
    for (double& x : u) x = std::clamp(x, 0.0, 1.0);
    ++out.evaluations;
    const double f = -SearchSpace::value(space.point(u));
    return Vertex{std::move(u), f};
  };
  const double step = 1.0 / static_cast<double>(n - 1);
  std::vector<Vertex> simplex;
  simplex.push_back(Vertex{start, -out.grid_value});
  for (std::size_t i = 0; i < dims; ++i) {
    std::vector<double> u = start;
    u[i] += (u[i] + step <= 1.0) ? step : -step;
    simplex.push_back(evaluate(u));
  }

  auto combine = [&](const std::vector<double>& a, const std::vector<double>& b, double t) {
    // a + t (b - a)
    std::vector<double> c(dims);
    for (std::size_t i = 0; i < dims; ++i) c[i] = a[i] + t * (b[i] - a[i]);
    return c;
  };

  constexpr int kMaxIterations = 20000;
  for (int it = 0; it < kMaxIterations; ++it) {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    double diameter = 0.0;
    for (std::size_t v = 1; v < simplex.size(); ++v)
      for (std::size_t i = 0; i < dims; ++i)
        diameter = std::max(diameter, std::abs(simplex[v].u[i] - simplex[0].u[i]));
    out.simplex_iterations = it;
    if (diameter < Tolerances::simplex_diameter) {
      out.simplex_converged = true;
      break;
    }

    std::vector<double> centroid(dims, 0.0);
    for (std::size_t v = 0; v + 1 < simplex.size(); ++v)
      for (std::size_t i = 0; i < dims; ++i) centroid[i] += simplex[v].u[i] / static_cast<double>(dims);
    Vertex& worst = simplex.back();
    const double second_worst = simplex[simplex.size() - 2].f;

    Vertex reflected = evaluate(combine(centroid, worst.u, -1.0));
    if (reflected.f < simplex.front().f) {
      Vertex expanded = evaluate(combine(centroid, worst.u, -2.0));
      worst = expanded.f < reflected.f ? std::move(expanded) : std::move(reflected);
      continue;
    }
    if (reflected.f < second_worst) {
      worst = std::move(reflected);
      continue;
    }
    const bool outside = reflected.f < worst.f;
    Vertex contracted = outside ? evaluate(combine(centroid, reflected.u, 0.5))
                                : evaluate(combine(centroid, worst.u, 0.5));
    if (contracted.f < (outside ? reflected.f : worst.f)) {
      worst = std::move(contracted);
      continue;
    }
    for (std::size_t v = 1; v < simplex.size(); ++v)
      simplex[v] = evaluate(combine(simplex[0].u, simplex[v].u, 0.5));
  }
  std::stable_sort(simplex.begin(), simplex.end(),
                   [](const Vertex& a, const Vertex& b) { return a.f < b.f; });

  out.value = -simplex.front().f;
  out.argmax = space.point(simplex.front().u);
  return out;
}

SlopeEstimate small_j_slope(const WignerFunction& wigner) {
  constexpr double J = Tolerances::small_j;
  const double b0 = bell_combination(wigner, 0.0).B;
  const double s_full = (bell_combination(wigner, J).B - b0) / J;
  const double s_half = (bell_combination(wigner, 0.5 * J).B - b0) / (0.5 * J);
  SlopeEstimate out;
  out.b0 = b0;
  out.slope = 2.0 * s_half - s_full;
  out.anchored = std::abs(b0 - 2.0) <= Tolerances::slope_anchor;
  return out;
}

}  // namespace cvbell
