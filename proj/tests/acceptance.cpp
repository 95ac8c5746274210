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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cvbell/bell.hpp"
#include "cvbell/commands.hpp"
#include "cvbell/dynamics.hpp"
#include "cvbell/mixed_states.hpp"
#include "cvbell/state_analysis.hpp"
#include "support/quadrature.hpp"

using namespace cvbell;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<void(Outcome&)> body;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

void bell_maximum(Outcome& o) {
  const double b = bell_combination(pure_evaluator(1.5), 0.01).B;
  BellSearch s;
  s.set_free(BellParameter::J);
  s.fixed = {0.01, 1.5, 0.0, 0.0};
  const auto m = maximize_bell(s);
  o.detail << "B(0.01)=" << b << " B_max=" << m.value << " at J=" << m.argmax[0];
  o.expect(b >= 2.185 && b <= 2.195, "B(0.01) in [2.185, 2.195]");
  o.expect(m.value >= 2.185 && m.value <= 2.195, "B_max in [2.185, 2.195]");
}

void pure_reduction(Outcome& o) {
  std::mt19937_64 rng(20260101);
  std::normal_distribution<double> n(0.0, 0.6);
  double worst = 0.0;
  for (double r : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    const auto form = evolve_coefficients({r, 0.0, 0.0});
    for (int i = 0; i < 100; ++i) {
      const auto pt = TwoModePoint::from_real({n(rng), n(rng), n(rng), n(rng)});
      worst = std::max(worst, rel(wigner_gaussian_eval(pt, form), wigner_pure_2mss(pt, r)));
    }
  }
  o.detail << "max relative deviation " << worst;
  o.expect(worst <= 1e-12, "relative deviation <= 1e-12");
}

void oracle_equivalence(Outcome& o) {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> ur(0.0, 3.0), ud(0.0, 6.0), un(0.0, 5.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const SqueezedStateParams p(ur(rng), ud(rng), un(rng));
    // Unit time: kappa = r, gamma = d.
    const auto dd = drift_diffusion(p.r(), p.d(), p.nbar());
    const Mat4 sigma = rk4_lyapunov(dd.drift, dd.diffusion, vacuum_covariance(), 1.0, 10000);
    worst = std::max(worst, max_abs_diff(inverse(sigma), precision_from_form(evolve_coefficients(p))));
  }
  o.detail << "max elementwise precision deviation " << worst;
  o.expect(worst <= 1e-6, "elementwise deviation <= 1e-6");
}

// Grid r = 3i/29, d = 6j/29, nbar = 5k/29. Then d*nbar - r = (30jk - 87i)/841,
// so the expected verdict is decided in integers.
template <class F>
void for_grid(F&& f) {
  for (int i = 0; i < 30; ++i)
    for (int j = 0; j < 30; ++j)
      for (int k = 0; k < 30; ++k) f(i, j, k, SqueezedStateParams(3.0 * i / 29.0, 6.0 * j / 29.0, 5.0 * k / 29.0));
}

void separability_law(Outcome& o) {
  int mismatches = 0, separable = 0, boundary = 0;
  double worst = 0.0;
  for_grid([&](int i, int j, int k, const SqueezedStateParams& p) {
    const auto rep = separability_eigenvalues(p);
    const int key = 30 * j * k - 87 * i;
    if (key == 0) ++boundary;
    if (rep.separable != (key >= 0)) ++mismatches;
    if (rep.separable) ++separable;
    const auto cf = closed_form_separability_eigenvalues(p);
    const double lo = std::min(cf[0], cf[1]), hi = std::max(cf[0], cf[1]);
    worst = std::max({worst, std::abs(rep.eigenvalues[0] - lo), std::abs(rep.eigenvalues[1] - lo),
                      std::abs(rep.eigenvalues[2] - hi), std::abs(rep.eigenvalues[3] - hi)});
  });
  o.detail << "27000 cells, " << separable << " separable (" << boundary << " on the boundary), " << mismatches
           << " mismatches, max eigenvalue route gap " << worst;
  o.expect(mismatches == 0, "verdicts match sign(d*nbar - r)");
  o.expect(worst <= 1e-9, "closed-form eigenvalues within 1e-9");
}

void purity_uniqueness(Outcome& o) {
  int wrong = 0, pure = 0, vacuum = 0;
  for_grid([&](int i, int j, int k, const SqueezedStateParams& p) {
    const bool is = is_pure(evolve_coefficients(p)).pure;
    if (is) ++pure;
    if (is != (j == 0)) {
      ++wrong;
      if (i == 0 && k == 0) ++vacuum;
    }
  });
  o.detail << pure << " pure cells, " << wrong << " misclassified (" << vacuum
           << " of them r=0, nbar=0, d>0: vacuum in a zero-temperature bath)";
  o.expect(wrong == 0, "pure exactly on d = 0");
  o.expect(pure == 900, "900 cells on the d = 0 slice");
}

void steady_state_limit(Outcome& o) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ug(0.1, 4.0), uq(0.0, 0.98), un(0.0, 4.0);
  double worst = 0.0;
  for (int i = 0; i < 40; ++i) {
    const double gamma = ug(rng), kappa = 0.5 * gamma * uq(rng), nbar = un(rng);
    const auto report = steady_state(gamma, kappa, nbar);
    if (!report.limit_form) {
      o.expect(false, "limit form exists for gamma > 2 kappa");
      continue;
    }
    const double t = 40.0 / (gamma - 2.0 * kappa);
    const auto late = nm_from_form(evolve_coefficients(SqueezedStateParams::from_rates(kappa, gamma, t, nbar)));
    const auto lim = nm_from_form(*report.limit_form);
    worst = std::max({worst, std::abs(late.n - lim.n), std::abs(late.m - lim.m)});
  }
  const auto thermal = steady_state(1.0, 0.0, 2.0);
  const double n_thermal = thermal.limit_form ? nm_from_form(*thermal.limit_form).n : -1.0;
  const auto boundary = steady_state(2.0, 1.0, 0.5);
  o.detail << "max |dN|,|dM| " << worst << ", thermal N=" << n_thermal << ", gamma=2kappa -> "
           << to_string(boundary.classification);
  o.expect(worst <= 1e-8, "N, M within 1e-8");
  o.expect(thermal.classification == SteadyStateClass::Thermal && std::abs(n_thermal - 2.0) < 1e-12,
           "kappa = 0 gives thermal N = nbar");
  o.expect(boundary.classification == SteadyStateClass::BoundaryUndefined && !boundary.exists,
           "gamma = 2 kappa is boundary-undefined");
}

void bell_vs_diffusion(Outcome& o) {
  const auto b = [](double d) { return bell_value(0.01, {1.5, d, 0.0}); };
  double first_below = -1.0;
  for (double d : linear_grid(0.0, 50.0, 501)) {
    if (b(d) < 2.0) {
      first_below = d;
      break;
    }
  }
  o.detail << "B(0)=" << b(0.0) << " first d with B<2: " << first_below << " B(50)=" << b(50.0);
  o.expect(b(0.0) > 2.0, "B(0) > 2");
  o.expect(first_below > 0.0, "B eventually below 2");
  o.expect(b(50.0) > 1.95 && b(50.0) < 2.0, "B(50) in (1.95, 2)");
}

void werner_threshold(Outcome& o) {
  const auto t = werner_violation_threshold(1.5, default_threshold_j_grid());
  o.detail << "p_star=" << t.p_star << " (max B at p=1: " << t.max_b_pure << ")";
  o.expect(t.violates, "pure state violates");
  o.expect(t.p_star >= 0.87 && t.p_star <= 0.93, "p_star in [0.87, 0.93]");
}

void phase_diffused(Outcome& o) {
  double worst = 0.0;
  for (double r : {0.5, 1.5}) {
    for (double p : {0.1, 0.5, 1.0}) {
      const auto s = small_j_slope(mixture_evaluator({p, r, MixtureKind::PhaseDiffused}));
      worst = std::max(worst, rel(s.slope, 4.0 * p * std::sinh(2.0 * r)));
    }
  }
  o.detail << "max slope deviation " << worst * 100.0 << "%";
  o.expect(worst <= 1e-3, "slope within 0.1%");
  const auto grid = commands::phase_diffused_threshold_j_grid();
  for (double p : {0.05, 0.2}) {
    const auto w = mixture_evaluator({p, 1.5, MixtureKind::PhaseDiffused});
    double best = 0.0, at = 0.0;
    for (double J : grid) {
      const double b = bell_combination(w, J).B;
      if (b > best) {
        best = b;
        at = J;
      }
    }
    o.detail << "; p=" << p << " max B-2=" << best - 2.0 << " at J=" << at;
    o.expect(best > 2.0, "violation for p = " + std::to_string(p));
  }
}

void special_functions(Outcome& o) {
  double phase_gap = 0.0;
  for (double rho1 : {0.0, 0.1, 0.3, 0.6, 1.0})
    for (double rho2 : {0.0, 0.1, 0.3, 0.6, 1.0}) {
      const TwoModePoint pt{std::polar(rho1, 0.4), std::polar(rho2, -0.9)};
      const double closed = phase_averaged_wigner(pt, 1.5);
      phase_gap = std::max(phase_gap, std::abs(phase_average_quadrature_oracle(pt, 1.5, 128) - closed) / closed);
    }

  double marginal_gap = 0.0;
  for (double r : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    const double t = std::tanh(2.0 * r), sigma = 0.5 / std::sqrt(std::cosh(2.0 * r));
    for (const std::complex<double> a1 : {std::complex<double>(0.0, 0.0), std::complex<double>(0.5, -0.3)}) {
      const double q = testing::integrate_mode2([&](double x, double y) { return wigner_pure_2mss({a1, {x, y}}, r); },
                                                t * a1.real(), -t * a1.imag(), sigma);
      marginal_gap = std::max(marginal_gap, std::abs(q - thermal_marginal(a1, r)));
    }
  }

  const double r = 1.5;
  const double sa = std::exp(r) / 2.0, sb = std::exp(-r) / 2.0, sth = std::sqrt(std::cosh(2.0 * r)) / 2.0;
  const auto rotated = [](const GaussianForm& f) {
    const auto a = testing::scaled_rule({std::sqrt(f.h / (f.c1 + f.c2))});
    const auto b = testing::scaled_rule({std::sqrt(f.h / (f.c1 - f.c2))});
    return std::array<QuadratureRule, 4>{a, b, b, a};
  };
  const auto diffused = evolve_coefficients({r, 1.0, 0.5});
  const auto wide = testing::scaled_rule({sa, sth}), narrow = testing::scaled_rule({sb, sth});
  const std::vector<std::pair<const char*, double>> norms{
      {"pure", testing::integrate_rotated(pure_evaluator(r), rotated(evolve_coefficients({r, 0.0, 0.0})))},
      {"gaussian", testing::integrate_rotated(gaussian_evaluator(diffused), rotated(diffused))},
      {"werner", testing::integrate_rotated(mixture_evaluator({0.5, r, MixtureKind::WernerThermal}),
                                            {wide, narrow, narrow, wide})},
      {"phase-diffused", testing::integrate_polar(mixture_evaluator({0.5, r, MixtureKind::PhaseDiffused}), sa, sb, 3, 256)},
  };
  double norm_gap = 0.0;
  for (const auto& [name, v] : norms) norm_gap = std::max(norm_gap, std::abs(v - 1.0));

  o.detail << "phase average gap " << phase_gap << ", marginal gap " << marginal_gap << ", normalization gap "
           << norm_gap;
  o.expect(phase_gap <= 1e-8, "phase average within 1e-8");
  o.expect(marginal_gap <= 1e-8, "marginal within 1e-8");
  o.expect(norm_gap <= 1e-6, "normalization within 1e-6");
}

void sign_note(Outcome& o) {
  // The alternate sign exp(-J (c1 + c2)/h) in the last term does not describe
  // the four-point combination; the assembly and the (c1 - c2) form do.
  const auto f = evolve_coefficients({1.5, 0.0, 0.0});
  const double J = 0.01;
  const double alternate = (1.0 + 2.0 * std::exp(-J * f.c1 / (2.0 * f.h)) - std::exp(-J * (f.c1 + f.c2) / f.h)) / f.h;
  const double assembled = bell_combination(pure_evaluator(1.5), J).B;
  const double closed = bell_closed_form(f, J);
  o.detail << "alternate sign " << alternate << ", assembly " << assembled << ", closed form " << closed;
  o.expect(std::abs(alternate - 1.637) < 1e-3, "alternate sign gives 1.637");
  o.expect(assembled >= 2.185 && assembled <= 2.195, "assembly gives 2.19");
  o.expect(std::abs(closed - assembled) < 1e-12, "closed form matches assembly");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Bell maximum at r=1.5, d=0", 1.0, bell_maximum},
      {2, "pure-state reduction at d=0", 1.0, pure_reduction},
      {3, "Lyapunov oracle equivalence", 30.0, oracle_equivalence},
      {4, "separability law on a 30^3 grid", 10.0, separability_law},
      {5, "purity only on the d=0 slice", 5.0, purity_uniqueness},
      {6, "steady-state limit", 1.0, steady_state_limit},
      {7, "Bell value versus diffusion", 1.0, bell_vs_diffusion},
      {8, "Werner threshold", 10.0, werner_threshold},
      {9, "phase-diffused nonlocality", 5.0, phase_diffused},
      {10, "special-function quality", 60.0, special_functions},
      {11, "closed-form sign note", 1.0, sign_note},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    o.detail.precision(10);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) o.expect(false, "runtime budget");
    if (!o.ok) ++failed;
    std::printf("%s criterion %2d: %s | %s | %.3f s (budget %.0f s)\n", o.ok ? "PASS" : "FAIL", c.id, c.title,
                o.detail.str().c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
