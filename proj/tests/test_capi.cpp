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

#include <cvbell/cvbell.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

extern "C" int cvb_c_smoke(void);

namespace {

struct StateGuard {
  cvb_state* s = nullptr;
  ~StateGuard() { cvb_state_destroy(s); }
};

struct ReportGuard {
  cvb_report* r = nullptr;
  ~ReportGuard() { cvb_report_destroy(r); }
};

}  // namespace

TEST_CASE("C header compiles as C") { CHECK(cvb_c_smoke() == 0); }

TEST_CASE("version and status names") {
  CHECK(std::string(cvb_version()) == "1.0.0");
  CHECK(std::string(cvb_status_name(CVB_OK)) == "ok");
  CHECK(std::string(cvb_status_name(CVB_ERR_DOMAIN)) == "domain error");
  CHECK(std::string(cvb_status_name(static_cast<cvb_status>(99))) == "unknown status");
}

TEST_CASE("errors map to status codes and messages") {
  cvb_form form;
  const cvb_params bad{-1.0, 0.0, 0.0};
  CHECK(cvb_evolve_coefficients(&bad, &form) == CVB_ERR_DOMAIN);
  CHECK(std::string(cvb_last_error()).find("r") != std::string::npos);
  CHECK(cvb_evolve_coefficients(nullptr, &form) == CVB_ERR_INVALID_ARGUMENT);
  const cvb_params good{1.5, 1.0, 0.0};
  CHECK(cvb_evolve_coefficients(&good, nullptr) == CVB_ERR_INVALID_ARGUMENT);
  CHECK(cvb_evolve_coefficients(&good, &form) == CVB_OK);
  CHECK(std::string(cvb_last_error()).empty());

  double out[16];
  CHECK(cvb_covariance_ode_oracle(30.0, 0.0, 0.0, 1.0, 1000, out) == CVB_ERR_CONVERGENCE);
  CHECK(cvb_covariance_ode_oracle(1.0, 0.0, 0.0, 1.0, 10, out) == CVB_ERR_DOMAIN);
}

TEST_CASE("last error is per thread") {
  cvb_form form;
  const cvb_params bad{-1.0, 0.0, 0.0};
  REQUIRE(cvb_evolve_coefficients(&bad, &form) == CVB_ERR_DOMAIN);
  std::string other;
  std::thread([&] { other = cvb_last_error(); }).join();
  CHECK(other.empty());
  CHECK_FALSE(std::string(cvb_last_error()).empty());
}

TEST_CASE("phase-space functions") {
  const cvb_point origin{{0, 0, 0, 0}};
  double w = 0.0;
  REQUIRE(cvb_wigner_pure(&origin, 1.5, &w) == CVB_OK);
  CHECK(w == doctest::Approx(4.0 / (std::numbers::pi * std::numbers::pi)));

  cvb_params params;
  REQUIRE(cvb_params_from_rates(1.5, 1.0, 1.0, 0.0, &params) == CVB_OK);
  cvb_form form;
  REQUIRE(cvb_evolve_coefficients(&params, &form) == CVB_OK);
  CHECK(form.c1 == doctest::Approx(21.694641755125055).epsilon(1e-12));
  REQUIRE(cvb_wigner_gaussian(&origin, &form, &w) == CVB_OK);
  CHECK(w == doctest::Approx(4.0 / (std::numbers::pi * std::numbers::pi) / form.h));

  double wm[16], vm[16];
  REQUIRE(cvb_w_matrix(&form, wm) == CVB_OK);
  REQUIRE(cvb_v_from_w(wm, vm) == CVB_OK);
  cvb_moments nm;
  REQUIRE(cvb_nm_from_v(vm, &nm) == CVB_OK);
  const double denom = (form.c1 - form.c2) * (form.c1 + form.c2);
  CHECK(nm.n + 0.5 == doctest::Approx(2.0 * form.h * form.c1 / denom).epsilon(1e-12));
  CHECK(nm.m == doctest::Approx(2.0 * form.h * form.c2 / denom).epsilon(1e-12));

  double asym[16] = {1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
  CHECK(cvb_v_from_w(asym, vm) == CVB_ERR_DOMAIN);
}

TEST_CASE("dynamics functions") {
  double ev[4];
  REQUIRE(cvb_drift_eigenvalues(2.0, 0.5, ev) == CVB_OK);
  CHECK(ev[0] == -1.5);
  CHECK(ev[3] == -0.5);

  cvb_steady_state s;
  REQUIRE(cvb_find_steady_state(1.0, 0.0, 2.0, &s) == CVB_OK);
  CHECK(s.exists == 1);
  CHECK(s.classification == CVB_STEADY_THERMAL);
  CHECK(s.limit_moments.n == doctest::Approx(2.0));
  REQUIRE(cvb_find_steady_state(2.0, 1.0, 0.0, &s) == CVB_OK);
  CHECK(s.exists == 0);
  CHECK(s.classification == CVB_STEADY_BOUNDARY_UNDEFINED);
  REQUIRE(cvb_find_steady_state(0.0, 1.0, 0.0, &s) == CVB_OK);
  CHECK(s.classification == CVB_STEADY_NONE);

  double sigma[16];
  REQUIRE(cvb_covariance_ode_oracle(1.5, 1.0, 0.0, 1.0, 10000, sigma) == CVB_OK);
  double vac[16] = {0.25, 0, 0, 0, 0, 0.25, 0, 0, 0, 0, 0.25, 0, 0, 0, 0, 0.25};
  cvb_form green;
  REQUIRE(cvb_propagate_green(vac, 1.5, 1.0, 0.0, 1.0, &green) == CVB_OK);
  CHECK(green.h == doctest::Approx(2.7912798661569074).epsilon(1e-10));
  // Σ00 = c1 / (16 h) for the diffused form.
  CHECK(sigma[0] == doctest::Approx(green.c1 / 16.0).epsilon(1e-8));
}

TEST_CASE("analysis functions") {
  const cvb_form pure{4.0 * std::cosh(3.0), -4.0 * std::sinh(3.0), 1.0};
  cvb_purity p;
  REQUIRE(cvb_is_pure(&pure, &p) == CVB_OK);
  CHECK(p.pure == 1);

  const cvb_params sep{1.0, 2.0, 1.0};
  cvb_separability s;
  REQUIRE(cvb_classify_separability(&sep, &s) == CVB_OK);
  CHECK(s.separable == 1);
  CHECK(s.margin >= 0.0);
  CHECK(s.e12 == doctest::Approx(3.0));
}

TEST_CASE("state handles") {
  StateGuard pure;
  REQUIRE(cvb_state_create_pure(1.5, &pure.s) == CVB_OK);
  cvb_bell_evaluation ev;
  REQUIRE(cvb_state_bell(pure.s, 0.01, &ev) == CVB_OK);
  CHECK(ev.b == doctest::Approx(2.187452904044629).epsilon(1e-12));
  CHECK(ev.j == 0.01);
  CHECK(ev.correlations[0] == doctest::Approx(1.0));

  StateGuard diffused;
  const cvb_params params{1.5, 1.0, 0.0};
  REQUIRE(cvb_state_create_diffused(&params, &diffused.s) == CVB_OK);
  REQUIRE(cvb_state_bell(diffused.s, 0.01, &ev) == CVB_OK);
  CHECK(ev.b == doctest::Approx(0.739622370808683).epsilon(1e-12));

  StateGuard form_state;
  const cvb_form vac{4.0, 0.0, 1.0};
  REQUIRE(cvb_state_create_form(&vac, &form_state.s) == CVB_OK);
  double w = 0.0;
  const cvb_point pt{{0.1, 0.2, -0.3, 0.0}};
  REQUIRE(cvb_state_wigner(form_state.s, &pt, &w) == CVB_OK);
  CHECK(w == doctest::Approx(4.0 / (std::numbers::pi * std::numbers::pi) * std::exp(-2.0 * 0.14)));

  StateGuard mix;
  REQUIRE(cvb_state_create_mixture(CVB_MIXTURE_PHASE_DIFFUSED, 0.5, 1.5, &mix.s) == CVB_OK);
  cvb_slope slope;
  REQUIRE(cvb_state_small_j_slope(mix.s, &slope) == CVB_OK);
  CHECK(slope.anchored == 1);
  CHECK(slope.slope == doctest::Approx(2.0 * std::sinh(3.0)).epsilon(1e-3));

  cvb_state* bad = reinterpret_cast<cvb_state*>(0x1);
  CHECK(cvb_state_create_mixture(CVB_MIXTURE_WERNER_THERMAL, 1.5, 1.0, &bad) == CVB_ERR_DOMAIN);
  CHECK(bad == reinterpret_cast<cvb_state*>(0x1));
  CHECK(cvb_state_create_mixture(static_cast<cvb_mixture_kind>(7), 0.5, 1.0, &bad) == CVB_ERR_INVALID_ARGUMENT);
  CHECK(cvb_state_bell(nullptr, 0.01, &ev) == CVB_ERR_INVALID_ARGUMENT);
  cvb_state_destroy(nullptr);
}

TEST_CASE("maximization and thresholds") {
  cvb_bell_search search;
  cvb_bell_search_defaults(&search);
  CHECK(search.fixed[1] == 1.5);
  CHECK(search.lower[0] == 1e-4);
  CHECK(search.grid_points == 32);
  search.free_mask = CVB_PARAM_J;
  cvb_bell_maximum m;
  REQUIRE(cvb_maximize_bell(&search, &m) == CVB_OK);
  CHECK(m.value > 2.185);
  CHECK(m.value < 2.195);
  CHECK(m.converged == 1);
  search.free_mask = 0;
  CHECK(cvb_maximize_bell(&search, &m) == CVB_ERR_DOMAIN);
  search.free_mask = 1u << 5;
  CHECK(cvb_maximize_bell(&search, &m) == CVB_ERR_INVALID_ARGUMENT);

  cvb_threshold t;
  REQUIRE(cvb_violation_threshold(CVB_MIXTURE_WERNER_THERMAL, 1.5, nullptr, 0, &t) == CVB_OK);
  CHECK(t.violates == 1);
  CHECK(t.p_star > 0.87);
  CHECK(t.p_star < 0.93);
  const double grid[] = {0.1, 0.5};
  REQUIRE(cvb_violation_threshold(CVB_MIXTURE_WERNER_THERMAL, 1.5, grid, 2, &t) == CVB_OK);
  CHECK(t.violates == 0);

  double crit = 0.0;
  REQUIRE(cvb_finite_dim_werner_threshold(2, &crit) == CVB_OK);
  CHECK(crit == doctest::Approx(1.0 / 3.0));
  CHECK(cvb_finite_dim_werner_threshold(1, &crit) == CVB_ERR_DOMAIN);
}

TEST_CASE("report handles") {
  ReportGuard rep;
  const cvb_params params{1.5, 1.0, 0.0};
  REQUIRE(cvb_report_coeffs(&params, &rep.r) == CVB_OK);
  CHECK(cvb_report_row_count(rep.r) == 1);
  const std::size_t ncol = cvb_report_column_count(rep.r);
  REQUIRE(ncol > 4);
  CHECK(std::string(cvb_report_column_name(rep.r, 3)) == "c1");
  CHECK(cvb_report_column_name(rep.r, ncol) == nullptr);
  double v = 0.0;
  REQUIRE(cvb_report_value(rep.r, 0, 3, &v) == CVB_OK);
  CHECK(v == doctest::Approx(21.694641755125055).epsilon(1e-12));
  CHECK(cvb_report_value(rep.r, 1, 0, &v) == CVB_ERR_INVALID_ARGUMENT);

  char* csv = nullptr;
  REQUIRE(cvb_report_render(rep.r, CVB_FORMAT_CSV, &csv) == CVB_OK);
  CHECK(std::string(csv).find("# command: coeffs\n") == 0);
  cvb_string_free(csv);
  char* json = nullptr;
  REQUIRE(cvb_report_render(rep.r, CVB_FORMAT_JSON, &json) == CVB_OK);
  CHECK(json[0] == '{');
  cvb_string_free(json);
  CHECK(cvb_report_render(rep.r, static_cast<cvb_format>(3), &csv) == CVB_ERR_INVALID_ARGUMENT);

  const std::string path = "capi_report_test.csv";
  REQUIRE(cvb_report_write(rep.r, CVB_FORMAT_CSV, path.c_str()) == CVB_OK);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("r,d,nbar,c1") != std::string::npos);
  std::remove(path.c_str());
  CHECK(cvb_report_write(rep.r, CVB_FORMAT_CSV, "/nonexistent-dir/x.csv") == CVB_ERR_IO);
}

TEST_CASE("report builders") {
  const double j[] = {0.0, 0.01};
  const double p[] = {1.0, 0.0};
  const cvb_params params{1.5, 0.0, 0.0};
  cvb_bell_search search;
  cvb_bell_search_defaults(&search);
  search.free_mask = CVB_PARAM_J;
  {
    ReportGuard r;
    REQUIRE(cvb_report_bell(&params, j, 2, &r.r) == CVB_OK);
    CHECK(cvb_report_row_count(r.r) == 2);
  }
  {
    ReportGuard r;
    REQUIRE(cvb_report_coeffs_scan(1.5, 1.0, 0.0, 1.0, 5, &r.r) == CVB_OK);
    CHECK(cvb_report_row_count(r.r) == 5);
  }
  {
    ReportGuard r;
    REQUIRE(cvb_report_maximize(&search, &r.r) == CVB_OK);
    CHECK(cvb_report_row_count(r.r) == 1);
  }
  {
    ReportGuard r;
    REQUIRE(cvb_report_separability(&params, &r.r) == CVB_OK);
  }
  {
    ReportGuard r;
    REQUIRE(cvb_report_steady(2.0, 1.0, 0.0, &r.r) == CVB_OK);
  }
  {
    ReportGuard r;
    REQUIRE(cvb_report_mixture_curves(CVB_MIXTURE_WERNER_THERMAL, 1.5, p, 2, j, 2, &r.r) == CVB_OK);
    CHECK(cvb_report_row_count(r.r) == 4);
  }
  {
    ReportGuard r;
    REQUIRE(cvb_report_mixture_threshold(CVB_MIXTURE_WERNER_THERMAL, 1.5, nullptr, 0, &r.r) == CVB_OK);
  }
  {
    ReportGuard r;
    REQUIRE(cvb_report_phase_diffused_slope(1.5, p, 2, &r.r) == CVB_OK);
    CHECK(cvb_report_row_count(r.r) == 2);
  }
  {
    ReportGuard r;
    REQUIRE(cvb_report_figure(3, &r.r) == CVB_OK);
    CHECK(cvb_report_row_count(r.r) == 501);
    cvb_report* none = nullptr;
    CHECK(cvb_report_figure(9, &none) == CVB_ERR_DOMAIN);
    CHECK(none == nullptr);
  }
  cvb_report* none = nullptr;
  CHECK(cvb_report_bell(&params, nullptr, 2, &none) == CVB_ERR_INVALID_ARGUMENT);
  CHECK(cvb_report_row_count(nullptr) == 0);
}
