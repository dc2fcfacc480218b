// hcsc: constant-scalar-curvature metrics on Hirzebruch surfaces.
//
//   hcsc solve --m 1 --scalar-curvature 8 -o g18.json
//   hcsc curvature --profile g18.json
//   hcsc report --m 1 --scalar-curvature 25
//   hcsc sweep --m 1,2,3 --scalar-curvature -8,0,8,24,40
//   hcsc bachflat --constant 11 --y0 0.5833333333 --yp0 -2 --x-max 0.5
//   hcsc check
//
// Exit codes: 0 ok, 1 invariant failure, 2 bad arguments, 3 non-convergence,
// 4 route disagreement.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "hcsc/bachflat.hpp"
#include "hcsc/check.hpp"
#include "hcsc/csc_profile.hpp"
#include "hcsc/curvature.hpp"
#include "hcsc/errors.hpp"
#include "hcsc/functionals.hpp"
#include "hcsc/io.hpp"

namespace {

using namespace hcsc;

enum Exit { kOk = 0, kInvariant = 1, kBadArgs = 2, kNoConvergence = 3, kRouteDisagreement = 4 };

// Below this f the rho-based routes lose digits; rows switch to the polynomial form.
constexpr double kRhoRouteFloor = 0.05;
constexpr double kRouteTol = 1e-8;

struct RouteDisagreement : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    io::write_file_atomic(path, text);
  }
}

unsigned thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HCSC_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) n = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("HCSC_THREADS must be a positive integer");
    }
  }
  return n;
}

MetricProfile solve_profile(int m, double R, const std::string& generator, double tol, std::size_t grid) {
  const SolverParams params(m, R);
  return generator_from_string(generator) == Generator::closed_form ? solve_closed_form(params, grid)
                                                                    : solve_numeric_ivp(params, tol, grid);
}

io::CurvatureRow make_row(const CurvatureState& s, const CurvatureDiagnostics& d, const BachDiagonal& b,
                          std::string route) {
  return {s.t, s.f, s.fp, d.R, d.ric[0], d.ric[2], d.ric[3], d.w_sq, b.b1, b.b3, b.b4, std::move(route)};
}

std::string route_label(const BachDiagonal& b) {
  std::string label(to_string(b.route));
  if (b.rho_constant) label += ":" + io::format_double(*b.rho_constant);
  return label;
}

// Primary row per state plus rho-form comparison rows. With an explicit
// constant the comparison becomes strict.
void curvature_rows(const CurvatureState& s, const std::optional<SolverParams>& params,
                    const std::vector<double>& constants, bool strict, bool primary_only,
                    std::vector<io::CurvatureRow>& rows) {
  const bool rho_ok = s.f > kRhoRouteFloor;
  if (!rho_ok && !params) {
    throw SingularityError("curvature: f = " + io::format_double(s.f) + " needs a profile for the regular form");
  }
  const CurvatureDiagnostics d = norm_invariants(s);
  const BachDiagonal oracle = rho_ok ? bach_derdzinski(s) : csc_bach_regular(*params, s.f, s.fp);
  rows.push_back(make_row(s, d, oracle, route_label(oracle)));
  if (!rho_ok) return;
  for (double c : constants) {
    const BachDiagonal b = bach_closed_rho(s, c);
    if (strict) {
      double gap = 0.0;
      for (int i = 0; i < 4; ++i) gap = std::max(gap, std::abs(b.components()[i] - oracle.components()[i]));
      if (gap > kRouteTol * std::max(1.0, oracle.max_abs())) {
        throw RouteDisagreement("rho-form with constant " + io::format_double(c) + " differs from the Derdzinski "
                                "assembly by " + io::format_double(gap) + " at t = " + io::format_double(s.t));
      }
    }
    if (!primary_only) rows.push_back(make_row(s, d, b, route_label(b)));
  }
}

std::vector<double> linspace(const std::vector<double>& r) {
  const auto n = static_cast<std::size_t>(r[2]);
  if (n < 1 || r[2] != static_cast<double>(n)) throw std::invalid_argument("range count must be a positive integer");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = n == 1 ? r[0] : r[0] + (r[1] - r[0]) * i / (n - 1.0);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constant scalar curvature metrics on Hirzebruch surfaces"};
  app.require_subcommand(1);

  int m = 1;
  double R = 8.0;
  std::size_t grid = kDefaultGridSize;
  double tol = 1e-12;
  std::string generator = "closed_form";
  std::string out;

  auto add_metric = [&](CLI::App* cmd, bool required) {
    auto* om = cmd->add_option("--m", m, "Hirzebruch index (>= 1)");
    auto* oR = cmd->add_option("--scalar-curvature,-R", R, "Constant scalar curvature");
    if (required) {
      om->required();
      oR->required();
    }
    cmd->add_option("--grid", grid, "Number of Chebyshev nodes")->check(CLI::Range(std::size_t{64}, std::size_t{1} << 20));
    cmd->add_option("--tolerance", tol, "Numeric IVP tolerance")->check(CLI::Range(1e-13, 1e-6));
    cmd->add_option("--generator", generator, "closed_form or numeric_ivp")
        ->check(CLI::IsMember({"closed_form", "numeric_ivp"}));
    cmd->add_option("-o,--output", out, "Output file (default stdout)");
  };

  auto* solve = app.add_subcommand("solve", "Solve g_m(R) and write the profile JSON");
  add_metric(solve, true);

  auto* curv = app.add_subcommand("curvature", "Curvature and Bach diagonal per grid node (CSV)");
  add_metric(curv, false);
  std::string profile_path;
  bool point = false;
  bool primary_only = false;
  double pf = 1.0, pfp = 0.0, pfpp = 0.0, pfppp = 0.0, pfpppp = 0.0;
  std::optional<double> bach_constant;
  curv->add_option("--profile", profile_path, "Profile JSON from `solve`")->check(CLI::ExistingFile);
  curv->add_flag("--point", point, "Evaluate a single jet given by --f ... --fpppp");
  curv->add_option("--f", pf);
  curv->add_option("--fp", pfp);
  curv->add_option("--fpp", pfpp);
  curv->add_option("--fppp", pfppp);
  curv->add_option("--fpppp", pfpppp);
  curv->add_option("--bach-constant", bach_constant, "Check the rho-form with this constant against the assembly");
  curv->add_flag("--primary-only", primary_only, "Omit rho-form comparison rows");

  auto* report = app.add_subcommand("report", "Functional report (JSON)");
  add_metric(report, true);
  std::optional<double> t_coef;
  report->add_option("--t-coefficient", t_coef, "Also evaluate B_t at this t");

  auto* sweep = app.add_subcommand("sweep", "Functionals over an (m, R, t) grid (CSV)");
  std::vector<int> ms{1, 2, 3};
  std::vector<double> Rs{-8.0, 0.0, 8.0, 24.0, 40.0};
  std::vector<double> ts{-1.0, 0.0, 1.0, 59.0 / 6.0};
  sweep->add_option("--m", ms)->delimiter(',')->check(CLI::PositiveNumber);
  sweep->add_option("--scalar-curvature,-R", Rs)->delimiter(',');
  sweep->add_option("--t-coefficient", ts)->delimiter(',');
  sweep->add_option("--grid", grid)->check(CLI::Range(std::size_t{64}, std::size_t{1} << 20));
  sweep->add_option("-o,--output", out);

  auto* bf = app.add_subcommand("bachflat", "Shoot the Bach-flat ODE in (x, y) = (f^2, f'^2) (CSV)");
  double constant = kBachFlatC16;
  double x0 = 0.0, y0 = 1.0, yp0 = 0.0, x_max = 3.0;
  std::vector<double> y0_range, yp0_range;
  bf->add_option("--constant,-C", constant, "Trailing constant C (11 or 16 are the two of interest)")->required();
  bf->add_option("--x0", x0);
  auto* oy0 = bf->add_option("--y0", y0);
  bf->add_option("--yp0", yp0);
  bf->add_option("--x-max", x_max);
  bf->add_option("--tolerance", tol)->check(CLI::Range(1e-13, 1e-6));
  auto* gy = bf->add_option("--y0-range", y0_range, "lo hi n: grid search over y0")->expected(3);
  auto* gyp = bf->add_option("--yp0-range", yp0_range, "lo hi n: grid search over y'(x0)")->expected(3);
  gy->needs(gyp);
  gyp->needs(gy);
  oy0->excludes(gy);
  bf->add_option("-o,--output", out);

  auto* check = app.add_subcommand("check", "Run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadArgs;
  }

  try {
    if (solve->parsed()) {
      emit(out, io::profile_to_string(solve_profile(m, R, generator, tol, grid)));
      return kOk;
    }

    if (curv->parsed()) {
      std::vector<io::CurvatureRow> rows;
      std::vector<double> constants{kBachConstant11, kBachConstant16};
      if (bach_constant) constants = {*bach_constant};
      const bool strict = bach_constant.has_value();
      std::optional<RouteDisagreement> failure;
      auto run_state = [&](const CurvatureState& s, const std::optional<SolverParams>& p) {
        try {
          curvature_rows(s, p, constants, strict, primary_only, rows);
        } catch (const RouteDisagreement& e) {
          if (!failure) failure = e;
          curvature_rows(s, p, constants, false, primary_only, rows);
        }
      };
      if (point) {
        run_state(CurvatureState::from_jet(0.0, pf, pfp, pfpp, pfppp, pfpppp), std::nullopt);
      } else {
        const MetricProfile prof = profile_path.empty() ? solve_profile(m, R, generator, tol, grid)
                                                        : io::profile_from_string(io::read_file(profile_path));
        for (const auto& g : prof.grid()) run_state(jet(prof, std::clamp(g.t, -prof.half_length(), prof.half_length())), prof.params());
      }
      emit(out, io::curvature_csv(rows));
      if (failure) {
        std::cerr << "route disagreement: " << failure->what() << "\n";
        return kRouteDisagreement;
      }
      return kOk;
    }

    if (report->parsed()) {
      const MetricProfile prof = solve_profile(m, R, generator, tol, grid);
      nlohmann::json j = io::report_to_json(build_report(prof));
      if (t_coef) {
        j["bt"] = {{"t", *t_coef}, {"closed", bt_value(prof.params(), *t_coef)}, {"quadrature", bt_quadrature(prof, *t_coef)}};
      }
      emit(out, io::dump_json(j) + "\n");
      return kOk;
    }

    if (sweep->parsed()) {
      struct Cell {
        int m;
        double R;
      };
      std::vector<Cell> cells;
      for (int mm : ms) {
        for (double rr : Rs) cells.push_back({mm, rr});
      }
      std::vector<std::vector<io::SweepRow>> results(cells.size());
      std::vector<std::exception_ptr> errors(cells.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t i; (i = next++) < cells.size();) {
          try {
            const SolverParams p(cells[i].m, cells[i].R);
            const MetricProfile prof = solve_closed_form(p, grid);
            const double vol = quadrature(prof, [](const CurvatureState&) { return 1.0; });
            const double cgb = cgb_check(prof);
            const EigenBounds e = eigen_bounds(p);
            for (double t : ts) {
              results[i].push_back({p.m(), p.scalar_curvature(), t, vol, yamabe_value(p), bt_value(p, t),
                                    bt_quadrature(prof, t), cgb, e.fiber_lower, e.fiber_upper, e.stability});
            }
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      };
      const unsigned n = std::min<unsigned>(thread_cap(), static_cast<unsigned>(cells.size()));
      std::vector<std::thread> pool;
      for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
      worker();
      for (auto& th : pool) th.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
      std::vector<io::SweepRow> rows;
      for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
      emit(out, io::sweep_csv(rows));
      return kOk;
    }

    if (bf->parsed()) {
      const double C = constant;
      if (!y0_range.empty()) {
        emit(out, io::grid_csv(grid_search(x0, linspace(y0_range), linspace(yp0_range), C, x_max, tol, thread_cap())));
      } else {
        emit(out, io::trajectory_csv(shoot(x0, y0, yp0, C, x_max, tol)));
      }
      return kOk;
    }

    if (check->parsed()) {
      const auto start = std::chrono::steady_clock::now();
      const auto results = run_invariant_suite();
      std::size_t width = 0;
      for (const auto& r : results) width = std::max(width, r.module.size() + r.name.size() + 3);
      for (const auto& r : results) {
        const char* tag = r.finding ? "FINDING" : (r.passed ? "PASS" : "FAIL");
        const std::string label = r.module + " : " + r.name;
        std::printf("%-7s  %-*s  %s\n", tag, static_cast<int>(width), label.c_str(), r.detail.c_str());
      }
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const bool ok = suite_passed(results);
      std::printf("%s in %.2f s\n", ok ? "all invariants hold" : "invariant failure", secs);
      return ok ? kOk : kInvariant;
    }
  } catch (const RouteDisagreement& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRouteDisagreement;
  } catch (const InconsistencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRouteDisagreement;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const NonFiniteError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadArgs;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadArgs;
  }
  return kBadArgs;
}
