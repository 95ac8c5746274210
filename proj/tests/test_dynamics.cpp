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

#include <doctest.h>

#include <cmath>
#include <random>

#include "cvbell/dynamics.hpp"
#include "cvbell/errors.hpp"
#include "cvbell/state_analysis.hpp"

using namespace cvbell;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Σ(t) starting from the vacuum with unit time, so κ = r and γ = d.
Mat4 oracle(const SqueezedStateParams& p) { return covariance_ode_oracle(p.r(), p.d(), p.nbar(), 1.0, 10000); }

}  // namespace

TEST_CASE("drift and diffusion matrices") {
  const auto dd = drift_diffusion(0.5, 2.0, 1.0);
  const Mat4 a = Mat4::from_rows({-1.0, 0, 0.5, 0, 0, -1.0, 0, -0.5, 0.5, 0, -1.0, 0, 0, -0.5, 0, -1.0});
  CHECK(dd.drift == a);
  CHECK(dd.diffusion == 1.5 * Mat4::identity());
  CHECK_THROWS_AS(drift_diffusion(-1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("evolve_coefficients reference values") {
  const auto vac = evolve_coefficients({0.0, 0.0, 3.0});
  CHECK(vac.c1 == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(vac.c2 == doctest::Approx(0.0));
  CHECK(vac.h == doctest::Approx(1.0).epsilon(1e-15));

  const auto pure = evolve_coefficients({1.5, 0.0, 0.0});
  CHECK(rel(pure.c1, 4.0 * std::cosh(3.0)) < 1e-14);
  CHECK(rel(pure.c2, -4.0 * std::sinh(3.0)) < 1e-14);
  CHECK(rel(pure.h, 1.0) < 1e-14);

  const auto diffused = evolve_coefficients({1.5, 1.0, 0.0});
  CHECK(rel(diffused.c1, 21.694641755125055) < 1e-12);
  CHECK(rel(diffused.c2, -20.63969483845885) < 1e-12);
  CHECK(rel(diffused.h, 2.7912798661569074) < 1e-12);
}

TEST_CASE("normalization identity c1^2 - c2^2 = 16 h") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ur(0.0, 3.0), ud(0.0, 6.0), un(0.0, 5.0);
  for (int i = 0; i < 500; ++i) {
    const auto f = evolve_coefficients({ur(rng), ud(rng), un(rng)});
    CHECK(rel((f.c1 - f.c2) * (f.c1 + f.c2), 16.0 * f.h) < 1e-9);
    CHECK(f.h > 0.0);
    CHECK(f.c1 > std::abs(f.c2));
  }
}

TEST_CASE("no seam at d = 2r") {
  for (double r : {0.1, 1.0, 1.5, 2.5}) {
    const auto lo = evolve_coefficients({r, 2.0 * r - 1e-12, 0.3});
    const auto hi = evolve_coefficients({r, 2.0 * r + 1e-12, 0.3});
    const auto mid = evolve_coefficients({r, 2.0 * r, 0.3});
    CHECK(std::abs(lo.c1 - hi.c1) < 1e-9);
    CHECK(std::abs(lo.c2 - hi.c2) < 1e-9);
    CHECK(std::abs(lo.h - hi.h) < 1e-9);
    CHECK(std::abs(mid.h - lo.h) < 1e-9);
  }
}

TEST_CASE("h tends to one at both ends of d") {
  const double r = 0.5;
  CHECK(std::abs(evolve_coefficients({r, 1e-9, 0.0}).h - 1.0) < 1e-6);
  const double d = 1e3 * r;
  const double h = evolve_coefficients({r, d, 0.0}).h;
  CHECK(rel(h, d * d / (d * d - 4.0 * r * r)) < 0.01);
  CHECK(std::abs(h - 1.0) < 0.01);
}

TEST_CASE("drift eigenvalues") {
  CHECK(drift_eigenvalues(2.0, 0.5) == std::array<double, 4>{-1.5, -1.5, -0.5, -0.5});
  CHECK(drift_eigenvalues(1.0, 0.0) == std::array<double, 4>{-0.5, -0.5, -0.5, -0.5});
  CHECK(drift_eigenvalues(0.0, 1.0) == std::array<double, 4>{-1.0, -1.0, 1.0, 1.0});

  const auto numeric = detail::jacobi_eigenvalues(drift_diffusion(0.5, 2.0, 0.0).drift);
  const auto closed = drift_eigenvalues(2.0, 0.5);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(numeric[i] - closed[i]) < 1e-12);
}

TEST_CASE("steady_state classification") {
  const auto thermal = steady_state(1.0, 0.0, 2.0);
  CHECK(thermal.exists);
  CHECK(thermal.classification == SteadyStateClass::Thermal);
  REQUIRE(thermal.limit_form.has_value());
  const auto nm = nm_from_form(*thermal.limit_form);
  CHECK(nm.n == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(nm.m == doctest::Approx(0.0));

  const auto boundary = steady_state(2.0, 1.0, 0.0);
  CHECK_FALSE(boundary.exists);
  CHECK(boundary.classification == SteadyStateClass::BoundaryUndefined);
  CHECK_FALSE(boundary.limit_form.has_value());

  const auto none = steady_state(0.0, 1.0, 0.0);
  CHECK_FALSE(none.exists);
  CHECK(none.classification == SteadyStateClass::None);

  CHECK(steady_state(0.0, 0.0, 0.0).classification == SteadyStateClass::BoundaryUndefined);
  CHECK(steady_state(3.0, 1.0, 0.5).classification == SteadyStateClass::SqueezedThermal);
  CHECK(to_string(SteadyStateClass::BoundaryUndefined) == "boundary-undefined");
}

TEST_CASE("squeezed thermal limit matches the long-time form") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ug(0.2, 3.0), uq(0.0, 0.95), un(0.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const double gamma = ug(rng);
    const double kappa = 0.5 * gamma * uq(rng);
    const double nbar = un(rng);
    const auto report = steady_state(gamma, kappa, nbar);
    REQUIRE(report.limit_form.has_value());
    const double t = 40.0 / (gamma - 2.0 * kappa);
    const auto late = nm_from_form(evolve_coefficients(SqueezedStateParams::from_rates(kappa, gamma, t, nbar)));
    const auto limit = nm_from_form(*report.limit_form);
    CHECK(std::abs(late.n - limit.n) < 1e-8);
    CHECK(std::abs(late.m - limit.m) < 1e-8);
  }
}

TEST_CASE("covariance_ode_oracle trivial flows") {
  CHECK(max_abs_diff(covariance_ode_oracle(0.0, 0.0, 0.0, 5.0, 1000), vacuum_covariance()) < 1e-15);
  CHECK(max_abs_diff(covariance_ode_oracle(0.0, 2.0, 1.0, 30.0, 4000), thermal_covariance(1.0)) < 1e-10);
  CHECK(thermal_covariance(1.0) == 0.75 * Mat4::identity());
  CHECK_THROWS_AS(covariance_ode_oracle(1.0, 1.0, 0.0, 1.0, 999), DomainError);
  CHECK_THROWS_AS(covariance_ode_oracle(1.0, 1.0, 0.0, -1.0, 1000), DomainError);
}

TEST_CASE("covariance_ode_oracle rejects an unresolved integration") {
  CHECK_THROWS_AS(covariance_ode_oracle(30.0, 0.0, 0.0, 1.0, 1000), ConvergenceError);
}

TEST_CASE("covariance_ode_oracle reproduces the closed form") {
  const SqueezedStateParams p(1.5, 1.0, 0.0);
  const Mat4 sigma = oracle(p);
  const Mat4 prec = inverse(sigma);
  const auto f = evolve_coefficients(p);
  CHECK(std::abs(prec(0, 0) - f.c1 / f.h) < 1e-6);
  CHECK(std::abs(prec(0, 2) - f.c2 / f.h) < 1e-6);
  CHECK(std::abs(prec(1, 3) + f.c2 / f.h) < 1e-6);
  CHECK(max_abs_diff(prec, precision_from_form(f)) < 1e-6);

  const auto raw = covariance_ode_oracle(1.5, 1.0, 0.0, 1.0, 10000);
  CHECK(max_abs_diff(raw, covariance_from_form(evolve_coefficients({1.5, 1.0, 0.0}))) < 1e-6);
}

TEST_CASE("oracle equivalence on random parameters") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ur(0.0, 3.0), ud(0.0, 6.0), un(0.0, 5.0);
  for (int i = 0; i < 10; ++i) {
    const SqueezedStateParams p(ur(rng), ud(rng), un(rng));
    CHECK(max_abs_diff(oracle(p), covariance_from_form(evolve_coefficients(p))) < 1e-6);
  }
}

TEST_CASE("form and covariance interconvert") {
  const auto f = evolve_coefficients({1.1, 0.4, 0.7});
  const auto back = form_from_covariance(covariance_from_form(f));
  CHECK(rel(back.c1, f.c1) < 1e-12);
  CHECK(rel(back.c2, f.c2) < 1e-12);
  CHECK(rel(back.h, f.h) < 1e-12);
  CHECK(max_abs_diff(covariance_from_form(f) * precision_from_form(f), Mat4::identity()) < 1e-12);
}

TEST_CASE("drift_exponential matches the series exponential") {
  for (double t : {0.0, 0.3, 1.0, 3.0}) {
    const auto a = drift_diffusion(0.5, 1.0, 0.0).drift;
    CHECK(max_abs_diff(drift_exponential(0.5, 1.0, t), matrix_exp4(a, t)) < 1e-12);
  }
  const Mat4 e = drift_exponential(0.0, 1.0, 2.0);
  CHECK(max_abs_diff(e, std::exp(-1.0) * Mat4::identity()) < 1e-15);
}

TEST_CASE("propagate_green") {
  const auto squeeze = propagate_green(vacuum_covariance(), 0.75, 0.0, 0.0, 2.0);
  CHECK(rel(squeeze.c1, 4.0 * std::cosh(3.0)) < 1e-12);
  CHECK(rel(squeeze.c2, -4.0 * std::sinh(3.0)) < 1e-12);
  CHECK(rel(squeeze.h, 1.0) < 1e-12);

  const auto green = propagate_green(vacuum_covariance(), 1.5, 1.0, 0.0, 1.0);
  const auto closed = evolve_coefficients({1.5, 1.0, 0.0});
  CHECK(rel(green.c1, closed.c1) < 1e-10);
  CHECK(rel(green.c2, closed.c2) < 1e-10);
  CHECK(rel(green.h, closed.h) < 1e-10);

  const Mat4 th = thermal_covariance(1.3);
  CHECK(max_abs_diff(propagate_covariance(th, 0.0, 0.8, 1.3, 5.0), th) < 1e-14);

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> uk(0.0, 2.0), ug(0.0, 3.0), un(0.0, 2.0), ut(0.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double k = uk(rng), g = ug(rng), n = un(rng), t = ut(rng);
    const auto a = propagate_green(vacuum_covariance(), k, g, n, t);
    const auto b = evolve_coefficients(SqueezedStateParams::from_rates(k, g, t, n));
    CHECK(rel(a.c1, b.c1) < 1e-10);
    CHECK(std::abs(a.c2 - b.c2) < 1e-10 * b.c1);
    CHECK(rel(a.h, b.h) < 1e-10);
  }
  CHECK_THROWS_AS(propagate_green(-1.0 * Mat4::identity(), 1.0, 1.0, 0.0, 1.0), DomainError);
}
