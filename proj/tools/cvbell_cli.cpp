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

#include <cvbell/cvbell.h>

#include <CLI11.hpp>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  1  internal error\n"
    "  2  usage error (unknown flag, missing or invalid value)\n"
    "  3  domain, convergence or output error\n";

int exit_code(cvb_status st) {
  switch (st) {
    case CVB_OK: return kExitOk;
    case CVB_ERR_INVALID_ARGUMENT: return kExitUsage;
    case CVB_ERR_DOMAIN:
    case CVB_ERR_CONVERGENCE:
    case CVB_ERR_IO: return kExitDomain;
    case CVB_ERR_INCONSISTENT:
    case CVB_ERR_INTERNAL: return kExitInternal;
  }
  return kExitInternal;
}

int fail(cvb_status st) {
  std::fprintf(stderr, "cvbell: %s: %s\n", cvb_status_name(st), cvb_last_error());
  return exit_code(st);
}

struct Output {
  std::string format = "csv";
  std::string path;
};

int emit(cvb_report* report, const Output& out) {
  const cvb_format fmt = out.format == "json" ? CVB_FORMAT_JSON : CVB_FORMAT_CSV;
  cvb_status st;
  if (!out.path.empty()) {
    st = cvb_report_write(report, fmt, out.path.c_str());
  } else {
    char* text = nullptr;
    st = cvb_report_render(report, fmt, &text);
    if (st == CVB_OK) {
      std::fputs(text, stdout);
      std::fflush(stdout);
    }
    cvb_string_free(text);
  }
  cvb_report_destroy(report);
  return st == CVB_OK ? kExitOk : fail(st);
}

using Builder = std::function<cvb_status(cvb_report**)>;

int run(const Builder& build, const Output& out) {
  cvb_report* report = nullptr;
  const cvb_status st = build(&report);
  if (st != CVB_OK) return fail(st);
  return emit(report, out);
}

std::vector<double> geometric(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  const double step = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo * std::exp(step * static_cast<double>(i));
  g.back() = hi;
  return g;
}

struct JGrid {
  double lo = 1e-4;
  double hi = 1.0;
  std::size_t points = 200;
  bool given = false;
};

void add_j_grid(CLI::App* cmd, JGrid& grid) {
  cmd->add_option("--j-min", grid.lo, "Smallest J of the geometric grid")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--j-max", grid.hi, "Largest J of the geometric grid")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--j-points", grid.points, "Number of grid points")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}))
      ->capture_default_str();
}

bool j_grid_given(CLI::App* cmd) {
  return cmd->count("--j-min") + cmd->count("--j-max") + cmd->count("--j-points") > 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell nonlocality of diffused two-mode squeezed states"};
  app.footer(kExitCodes);
  app.set_version_flag("--version", cvb_version());
  app.require_subcommand(1);
  app.fallthrough();

  Output out;
  app.add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", out.path, "Write the report to a file instead of standard output");

  std::function<int()> action;

  // coeffs
  auto* coeffs = app.add_subcommand("coeffs", "Gaussian coefficients c1, c2, h and derived quantities");
  cvb_params cp{0.0, 0.0, 0.0};
  double kappa = 0.0, gamma = 0.0, t_max = 1.0;
  std::size_t samples = 101;
  auto* r_opt = coeffs->add_option("--r", cp.r, "Squeezing parameter")->check(CLI::NonNegativeNumber);
  auto* d_opt = coeffs->add_option("--d", cp.d, "Diffusion parameter")
                    ->check(CLI::NonNegativeNumber)
                    ->capture_default_str();
  coeffs->add_option("--nbar", cp.nbar, "Reservoir photon number")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  auto* k_opt = coeffs->add_option("--kappa", kappa, "Squeezing rate (time scan)")->check(CLI::NonNegativeNumber);
  auto* g_opt = coeffs->add_option("--gamma", gamma, "Damping rate (time scan)")->check(CLI::NonNegativeNumber);
  auto* t_opt = coeffs->add_option("--t-max", t_max, "End of the time scan")->check(CLI::NonNegativeNumber);
  auto* s_opt = coeffs->add_option("--samples", samples, "Time samples")->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
  r_opt->excludes(k_opt)->excludes(g_opt)->excludes(t_opt)->excludes(s_opt);
  d_opt->excludes(k_opt)->excludes(g_opt)->excludes(t_opt)->excludes(s_opt);
  k_opt->needs(g_opt);
  g_opt->needs(k_opt);
  coeffs->callback([&] {
    if (coeffs->count("--kappa") > 0) {
      action = [&] {
        return run([&](cvb_report** r) { return cvb_report_coeffs_scan(kappa, gamma, cp.nbar, t_max, samples, r); }, out);
      };
    } else {
      if (coeffs->count("--r") == 0) throw CLI::RequiredError("--r or --kappa/--gamma");
      action = [&] { return run([&](cvb_report** r) { return cvb_report_coeffs(&cp, r); }, out); };
    }
  });

  // figure
  auto* figure = app.add_subcommand("figure", "Data behind figures 1 to 5");
  int fig_index = 0;
  figure->add_option("index", fig_index, "Figure number")->required()->check(CLI::Range(1, 5));
  figure->callback([&] {
    action = [&] { return run([&](cvb_report** r) { return cvb_report_figure(fig_index, r); }, out); };
  });

  // bell
  auto* bell = app.add_subcommand("bell", "Bell combination of the diffused state");
  cvb_params bp{1.5, 0.0, 0.0};
  std::vector<double> bell_j{0.01};
  bell->add_option("--r", bp.r, "Squeezing parameter")->check(CLI::NonNegativeNumber)->capture_default_str();
  bell->add_option("--d", bp.d, "Diffusion parameter")->check(CLI::NonNegativeNumber)->capture_default_str();
  bell->add_option("--nbar", bp.nbar, "Reservoir photon number")->check(CLI::NonNegativeNumber)->capture_default_str();
  bell->add_option("--J", bell_j, "Displacement magnitude |a|^2 (repeatable)")
      ->check(CLI::NonNegativeNumber)
      ->delimiter(',')
      ->capture_default_str();
  bell->callback([&] {
    action = [&] {
      return run([&](cvb_report** r) { return cvb_report_bell(&bp, bell_j.data(), bell_j.size(), r); }, out);
    };
  });

  // maximize
  auto* maximize = app.add_subcommand("maximize", "Maximize the Bell combination over free parameters");
  cvb_bell_search search;
  cvb_bell_search_defaults(&search);
  std::vector<std::string> free_names;
  const std::array<const char*, 4> names{"J", "r", "d", "nbar"};
  maximize->add_option("--free", free_names, "Free parameters")
      ->required()
      ->delimiter(',')
      ->check(CLI::IsMember({"J", "r", "d", "nbar"}));
  for (std::size_t k = 0; k < 4; ++k) {
    const std::string n = names[k];
    maximize->add_option("--" + n, search.fixed[k], "Value of " + n + " when fixed")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    maximize->add_option("--" + n + "-min", search.lower[k], "Lower bound of " + n + " when free")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    maximize->add_option("--" + n + "-max", search.upper[k], "Upper bound of " + n + " when free")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  }
  maximize->add_option("--grid", search.grid_points, "Grid points per free axis")
      ->check(CLI::Range(32, 100000))
      ->capture_default_str();
  maximize->callback([&] {
    search.free_mask = 0;
    for (const auto& n : free_names)
      for (std::size_t k = 0; k < 4; ++k)
        if (n == names[k]) search.free_mask |= 1u << k;
    action = [&] { return run([&](cvb_report** r) { return cvb_report_maximize(&search, r); }, out); };
  });

  // separability
  auto* sep = app.add_subcommand("separability", "Separability from the eigenvalues of V - I/2");
  cvb_params sp{0.0, 0.0, 0.0};
  sep->add_option("--r", sp.r, "Squeezing parameter")->required()->check(CLI::NonNegativeNumber);
  sep->add_option("--d", sp.d, "Diffusion parameter")->required()->check(CLI::NonNegativeNumber);
  sep->add_option("--nbar", sp.nbar, "Reservoir photon number")->check(CLI::NonNegativeNumber)->capture_default_str();
  sep->callback([&] {
    action = [&] { return run([&](cvb_report** r) { return cvb_report_separability(&sp, r); }, out); };
  });

  // steady
  auto* steady = app.add_subcommand("steady", "Steady-state classification");
  double s_gamma = 0.0, s_kappa = 0.0, s_nbar = 0.0;
  steady->add_option("--gamma", s_gamma, "Damping rate")->required()->check(CLI::NonNegativeNumber);
  steady->add_option("--kappa", s_kappa, "Squeezing rate")->required()->check(CLI::NonNegativeNumber);
  steady->add_option("--nbar", s_nbar, "Reservoir photon number")->check(CLI::NonNegativeNumber)->capture_default_str();
  steady->callback([&] {
    action = [&] {
      return run([&](cvb_report** r) { return cvb_report_steady(s_gamma, s_kappa, s_nbar, r); }, out);
    };
  });

  // werner and phase-diffused
  struct MixtureArgs {
    double r = 1.5;
    std::vector<double> p;
    JGrid grid;
    bool threshold = false;
    bool slope = false;
  };
  MixtureArgs werner_args{1.5, {1.0, 0.95, 0.9, 0.5, 0.0}, {}, false, false};
  MixtureArgs pd_args{1.5, {1.0, 0.5, 0.2, 0.0}, {}, false, false};

  const auto add_mixture = [&](const char* name, const char* help, MixtureArgs& a, cvb_mixture_kind kind) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--r", a.r, "Squeezing parameter")->check(CLI::NonNegativeNumber)->capture_default_str();
    cmd->add_option("--p", a.p, "Mixing weight of the squeezed state (repeatable)")
        ->delimiter(',')
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    add_j_grid(cmd, a.grid);
    auto* thr = cmd->add_flag("--threshold", a.threshold, "Report the smallest violating p");
    if (kind == CVB_MIXTURE_PHASE_DIFFUSED)
      cmd->add_flag("--slope", a.slope, "Report the small-J slope of B")->excludes(thr);
    cmd->callback([&a, &action, &out, cmd, kind] {
      a.grid.given = j_grid_given(cmd);
      if (a.grid.given && a.grid.hi < a.grid.lo) throw CLI::ValidationError("--j-max", "must not be below --j-min");
      action = [&a, &out, kind] {
        if (a.slope)
          return run([&](cvb_report** r) { return cvb_report_phase_diffused_slope(a.r, a.p.data(), a.p.size(), r); },
                     out);
        if (a.threshold) {
          std::vector<double> grid;
          if (a.grid.given) grid = geometric(a.grid.lo, a.grid.hi, a.grid.points);
          return run(
              [&](cvb_report** r) {
                return cvb_report_mixture_threshold(kind, a.r, grid.empty() ? nullptr : grid.data(), grid.size(), r);
              },
              out);
        }
        const auto grid = geometric(a.grid.lo, a.grid.hi, a.grid.points);
        return run(
            [&](cvb_report** r) {
              return cvb_report_mixture_curves(kind, a.r, a.p.data(), a.p.size(), grid.data(), grid.size(), r);
            },
            out);
      };
    });
  };
  add_mixture("werner", "Mixture of the pure state with its thermal marginals", werner_args,
              CVB_MIXTURE_WERNER_THERMAL);
  add_mixture("phase-diffused", "Mixture of the pure state with its phase average", pd_args,
              CVB_MIXTURE_PHASE_DIFFUSED);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  return action ? action() : kExitUsage;
}
