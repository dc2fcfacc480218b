// Acceptance gate: one line per criterion, tolerances and runtime budgets fixed.
//   acceptance            run all ten
//   acceptance --only 4   run one (exit status reflects that criterion)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hcsc/bachflat.hpp"
#include "hcsc/csc_profile.hpp"
#include "hcsc/curvature.hpp"
#include "hcsc/functionals.hpp"

using namespace hcsc;

namespace {

constexpr int kMs[] = {1, 2, 3};
constexpr double kRs[] = {-8.0, 0.0, 8.0, 24.0, 40.0};

struct Outcome {
  bool ok;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<MetricProfile> grid_profiles() {
  std::vector<MetricProfile> out;
  for (int m : kMs) {
    for (double R : kRs) {
      out.push_back(solve_closed_form(SolverParams(m, R)));
      out.push_back(solve_numeric_ivp(SolverParams(m, R), 1e-12));
    }
  }
  return out;
}

Outcome ac1() {
  double agree = 0, bc = 0, fi = 0;
  for (int m : kMs) {
    for (double R : kRs) {
      const SolverParams p(m, R);
      const auto c = solve_closed_form(p);
      const auto n = solve_numeric_ivp(p, 1e-12);
      const double T = c.half_length();
      for (const auto& s : n.grid()) agree = std::max(agree, std::abs(jet(c, std::clamp(s.t, -T, T)).f - s.f));
      for (const auto* prof : {&c, &n}) {
        const auto& g = prof->grid();
        bc = std::max({bc, std::abs(g.front().f), std::abs(g.back().f), std::abs(g.front().fp - m), std::abs(g.back().fp + m)});
        for (const auto& s : g) fi = std::max(fi, std::abs(first_integral_residual(p, s.f, s.fp)));
      }
    }
  }
  return {agree < 1e-9 && bc < 1e-9 && fi < 1e-10,
          fmt("sup|f_c-f_n| %.2e", agree) + fmt(", boundary %.2e", bc) + fmt(", first integral %.2e", fi)};
}

Outcome ac2() {
  double worst = 0;
  std::size_t nodes = 0;
  for (const auto& prof : grid_profiles()) {
    const double T = prof.half_length();
    for (const auto& g : prof.grid()) {
      worst = std::max(worst, std::abs(scalar_curvature(jet(prof, std::clamp(g.t, -T, T))) - prof.params().scalar_curvature()));
      ++nodes;
    }
  }
  return {worst < 1e-10, fmt("max |R(t)-R| %.2e", worst) + " over " + std::to_string(nodes) + " nodes"};
}

Outcome ac3() {
  double worst = 0;
  for (int m : kMs) {
    for (double R : kRs) {
      const SolverParams p(m, R);
      const auto prof = solve_closed_form(p);
      const auto ci = closed_integrals(p);
      const double got[] = {integrate_profile(prof, [](const CurvatureState&) { return 1.0; }),
                            integrate_profile(prof, [](const CurvatureState& s) { return s.f * s.f; }),
                            integrate_profile(prof, [](const CurvatureState& s) { return s.f * s.f * s.f * s.f; })};
      const double want[] = {ci.int_f, ci.int_f3, ci.int_f5};
      for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(got[j] / want[j] - 1));
    }
  }
  return {worst < 1e-8, fmt("max relative error %.2e", worst)};
}

Outcome ac4() {
  const SolverParams p(1, 8);
  const double y = yamabe_value(p);
  const double vol = quadrature(solve_closed_form(p, 64), [](const CurvatureState&) { return 1.0; });
  const double vol_ref = std::numbers::sqrt2 * std::pow(std::numbers::pi, 3);
  const bool routes = std::abs(y / (8 * std::sqrt(vol)) - 1) < 1e-10 && std::abs(vol / vol_ref - 1) < 1e-10;
  const double miss = std::abs(y - 52.97531);
  return {miss <= 1e-4 && routes, fmt("Y = %.9f", y) + fmt(", |Y - 52.97531| = %.3e", miss) +
                                      (routes ? ", R sqrt(Vol) and Vol = sqrt2 pi^3 agree" : ", route mismatch")};
}

Outcome ac5() {
  double cq = 0, affine = 0;
  for (int m : kMs) {
    for (double R : kRs) {
      const SolverParams p(m, R);
      const auto prof = solve_closed_form(p);
      const double r2 = quadrature(prof, [](const CurvatureState& s) { return std::pow(scalar_curvature(s), 2); });
      const double b0 = bt_value(p, 0);
      for (double t : {-1.0, 0.0, 1.0, 59.0 / 6}) {
        const double closed = bt_value(p, t);
        cq = std::max(cq, std::abs(bt_quadrature(prof, t) / closed - 1));
        affine = std::max(affine, std::abs(closed - t * r2 - b0) / std::abs(b0));
      }
    }
  }
  return {cq < 1e-7 && affine < 1e-9, fmt("closed vs quadrature %.2e", cq) + fmt(", affinity %.2e", affine)};
}

Outcome ac6() {
  double worst = 0;
  for (const auto& prof : grid_profiles()) {
    worst = std::max(worst, std::abs(cgb_check(prof) / (16.0 * prof.params().m()) - 1));
  }
  return {worst < 1e-6, fmt("max |cgb/16m - 1| %.2e", worst) + " on 30 profiles"};
}

double gap(const BachDiagonal& a, const BachDiagonal& b) {
  double g = 0;
  for (int i = 0; i < 4; ++i) g = std::max(g, std::abs(a.components()[i] - b.components()[i]));
  return g;
}

Outcome ac7() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> fd(0.2, 3), d(-2, 2);
  double agree = 0, offset = 0, trace = 0, div = 0;
  const Vec4 want{5.0 / 6, 5.0 / 6, -5.0 / 6, -5.0 / 6};
  for (int i = 0; i < 1000; ++i) {
    const auto s = CurvatureState::from_jet(0, fd(rng), d(rng), d(rng), d(rng), d(rng));
    const auto o = bach_derdzinski(s);
    const double scale = std::max(1.0, o.max_abs());
    agree = std::max({agree, gap(o, bach_closed_scalar(s)) / scale, gap(o, bach_closed_rho(s, 16)) / scale});
    const auto b11 = bach_closed_rho(s, 11);
    for (int k = 0; k < 4; ++k) offset = std::max(offset, std::abs(b11.components()[k] - o.components()[k] - want[k]));
  }
  for (int m : kMs) {
    for (double R : kRs) {
      const SolverParams p(m, R);
      const auto prof = solve_closed_form(p);
      const double T = prof.half_length(), h = 1e-5;
      for (const auto& g : prof.grid()) {
        const auto s = jet(prof, g.t);
        const auto b = s.f > 0.05 ? bach_derdzinski(s) : csc_bach_regular(p, s.f, s.fp);
        trace = std::max(trace, std::abs(b.trace()) / std::max(1.0, b.max_abs()));
        if (s.f > 0.1 && std::abs(g.t) + h < T) {
          const double db4 = (bach_derdzinski(jet(prof, g.t + h)).b4 - bach_derdzinski(jet(prof, g.t - h)).b4) / (2 * h);
          div = std::max(div, std::abs(db4 - s.fp / s.f * (b.b3 - b.b4)));
        }
      }
    }
  }
  const double flat = bach_derdzinski(CurvatureState::from_jet(0, 1, 0, 0, 0, 0)).max_abs();
  const bool ok = agree < 1e-9 && offset < 1e-9 && trace < 1e-10 && div < 1e-4 && flat == 0.0;
  return {ok, fmt("routes %.2e", agree) + fmt(", C=11 offset vs (5/6)(1,1,-1,-1) %.2e", offset) +
                  fmt(", trace %.2e", trace) + fmt(", divergence %.2e", div) + fmt(", f=1 -> %.1e", flat)};
}

Outcome ac8() {
  const auto prof = solve_closed_form(SolverParams(1, 8));
  const double sup = b4_residual_on_profile(prof, 16) / 6;
  const double peak = bach_derdzinski(jet(prof, 0)).b4;
  const double want = (184 - 128 * std::numbers::sqrt2) / 24;
  const double err = std::abs(peak - want);
  return {sup >= 0.1 && err < 1e-9, fmt("sup|B4| %.6f", sup) + fmt(", B4(0) %.10f", peak) + fmt(", |B4(0) - (184-128sqrt2)/24| %.2e", err)};
}

Outcome ac9() {
  const ParabolaFamily curves[] = {{1, 7.0 / 12}, {4, 53.0 / 12}};
  double res = 0, stay = 0;
  std::string reach;
  for (const auto& p : curves) {
    for (int i = 0; i <= 3000; ++i) {
      const double x = 3.0 * i / 3000;
      res = std::max(res, std::abs(residual({x, p.y(x), p.yp(x), 11}, p.ypp())));
    }
    const auto tr = shoot(0, p.y(0), p.yp(0), 11, 0.5, 1e-12);
    for (const auto& s : tr.samples) stay = std::max(stay, std::abs(s.y - p.y(s.x)));
    reach += fmt(" %.4f", tr.samples.back().x) + "(" + std::string(to_string(tr.termination)) + ")";
  }
  const double forced = std::max({std::abs(forced_parabola_constant(1, 11) - 7.0 / 12),
                                  std::abs(forced_parabola_constant(4, 11) - 53.0 / 12),
                                  std::abs(forced_parabola_constant(1, 16) - 1), std::abs(forced_parabola_constant(4, 16) - 4)});
  return {res < 1e-12 && stay < 1e-9 && forced < 1e-12,
          fmt("residual %.2e", res) + fmt(", on-curve %.2e", stay) + ", shots end at" + reach + fmt(", forced c %.1e", forced)};
}

Outcome ac10() {
  const auto e = eigen_bounds(SolverParams(1, 8));
  bool tagged = true;
  for (int m = 1; m <= 5; ++m) {
    for (double R = -40; R <= 80; R += 0.25) {
      tagged = tagged && ((R > 24) == (eigen_bounds(SolverParams(m, R)).stability == Stability::unstable_R_gt_24));
    }
  }
  const bool ok = std::abs(e.fiber_lower - 0.19963) < 1e-4 && std::abs(e.fiber_upper - 1.80063) < 1e-4 && tagged;
  return {ok, fmt("bounds (%.7f", e.fiber_lower) + fmt(", %.7f)", e.fiber_upper) + (tagged ? ", R > 24 tagged unstable" : ", tagging wrong")};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  const std::vector<Criterion> all = {
      {1, "Duffing BVP: closed form vs IVP, boundary values, first integral", 2.0, ac1},
      {2, "constant scalar curvature at every node", 1.0, ac2},
      {3, "closed integrals vs quadrature", 2.0, ac3},
      {4, "Yamabe value 52.97531 +- 1e-4", 0.1, ac4},
      {5, "B_t closed form vs quadrature, affine in t", 3.0, ac5},
      {6, "Chern-Gauss-Bonnet = 16 m", 2.0, ac6},
      {7, "Bach three-route agreement, trace, divergence, C=11 offset", 5.0, ac7},
      {8, "g_1(8) is not Bach-flat, B4 peak", 0.5, ac8},
      {9, "Bach-flat ODE particular solutions and shooting", 2.0, ac9},
      {10, "eigenvalue bounds and stability tag", 0.1, ac10},
  };
  int failed = 0, ran = 0;
  for (const auto& c : all) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, {}};
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.ok && in_time;
    failed += pass ? 0 : 1;
    std::printf("AC%-2d %s  %s | %s | %.3f s (budget %.1f s)%s\n", c.id, pass ? "PASS" : "FAIL", c.title, o.detail.c_str(),
                secs, c.budget_s, in_time ? "" : " OVER BUDGET");
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
