#include "hcsc/check.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "hcsc/bachflat.hpp"
#include "hcsc/csc_profile.hpp"
#include "hcsc/curvature.hpp"
#include "hcsc/functionals.hpp"
#include "hcsc/io.hpp"
#include "hcsc/special_fn.hpp"

namespace hcsc {
namespace {

using std::numbers::pi;

constexpr int kMs[] = {1, 2, 3};
constexpr double kRs[] = {-8.0, 0.0, 8.0, 24.0, 40.0};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

class Suite {
 public:
  void run(const char* module, const char* name, const std::function<std::pair<bool, std::string>()>& body,
           bool finding = false) {
    CheckResult r{module, name, false, finding, {}};
    try {
      auto [ok, detail] = body();
      r.passed = ok;
      r.detail = std::move(detail);
    } catch (const std::exception& e) {
      r.passed = false;
      r.finding = false;
      r.detail = std::string("exception: ") + e.what();
    }
    results_.push_back(std::move(r));
  }

  // |value| <= tol, reporting the observed value.
  void bound(const char* module, const char* name, double value, double tol) {
    run(module, name, [&] { return std::pair{value <= tol, "max " + sci(value) + " <= " + sci(tol)}; });
  }

  // Runs shared setup; an exception is recorded as a failed entry.
  void guard(const char* module, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      results_.push_back({module, "setup", false, false, std::string("exception: ") + e.what()});
    }
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::vector<CheckResult> results_;
};

template <class Fn>
void for_grid(Fn&& fn) {
  for (int m : kMs) {
    for (double R : kRs) fn(SolverParams(m, R));
  }
}

std::vector<CurvatureState> random_jets(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> f(0.2, 3.0);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::vector<CurvatureState> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double fv = f(rng);
    const double a = d(rng), b = d(rng), c = d(rng), e = d(rng);
    out.push_back(CurvatureState::from_jet(0.0, fv, a, b, c, e));
  }
  return out;
}

double component_gap(const BachDiagonal& a, const BachDiagonal& b) {
  double g = 0.0;
  for (int i = 0; i < 4; ++i) g = std::max(g, std::abs(a.components()[i] - b.components()[i]));
  return g;
}

void special_fn_checks(Suite& s) {
  s.run("special_fn", "K at k = 0, 1/sqrt2, 0.5 to 1e-14 relative", [] {
    const double ref[][2] = {{0.0, pi / 2}, {1.0 / std::numbers::sqrt2, 1.854074677301372}, {0.5, 1.6857503548125961}};
    double worst = 0.0;
    for (auto& r : ref) {
      worst = std::max(worst, std::abs(complete_elliptic_k(EllipticModulus(r[0])) / r[1] - 1.0));
    }
    return std::pair{worst < 1e-14, "max rel " + sci(worst)};
  });
  s.run("special_fn", "cn(0)=1, cn(u,0)=cos u, cn(K)=0", [] {
    const EllipticModulus h(1.0 / std::numbers::sqrt2);
    const double e1 = std::abs(jacobi_cn(0.0, EllipticModulus(0.3)) - 1.0);
    const double e2 = std::abs(jacobi_cn(1.0, EllipticModulus(0.0)) - 0.5403023058681398);
    const double e3 = std::abs(jacobi_cn(complete_elliptic_k(h), h));
    const double worst = std::max({e1, e2, e3});
    return std::pair{worst < 1e-13, "max " + sci(worst)};
  });
  s.run("special_fn", "|cn| <= 1 and sn, dn consistent on |u| <= 2K", [] {
    double worst = 0.0;
    bool bounded = true;
    for (double k : {0.1, 0.5, 0.9, 0.999}) {
      const EllipticModulus mod(k);
      const double K = complete_elliptic_k(mod);
      for (int i = -200; i <= 200; ++i) {
        const double u = 2.0 * K * i / 200.0;
        const auto t = detail::jacobi_sncndn(u, mod);
        bounded = bounded && std::abs(t.cn) <= 1.0;
        worst = std::max(worst, std::abs(t.sn * t.sn + t.cn * t.cn - 1.0));
        worst = std::max(worst, std::abs(t.dn * t.dn + k * k * t.sn * t.sn - 1.0));
      }
    }
    return std::pair{bounded && worst < 1e-13, "identity " + sci(worst)};
  });
  s.run("special_fn", "d/du cn = -sn dn by central difference at 100 points", [] {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> kd(0.0, 0.99);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const EllipticModulus mod(kd(rng));
      const double K = complete_elliptic_k(mod);
      const double u = std::uniform_real_distribution<double>(0.0, K)(rng);
      const double h = 1e-6;
      const double fd = (jacobi_cn(u + h, mod) - jacobi_cn(u - h, mod)) / (2 * h);
      const auto t = detail::jacobi_sncndn(u, mod);
      worst = std::max(worst, std::abs(fd + t.sn * t.dn));
    }
    return std::pair{worst < 1e-6, "max " + sci(worst)};
  });
  s.run("special_fn", "K monotone increasing on 1000 moduli", [] {
    double prev = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double K = complete_elliptic_k(EllipticModulus(0.999 * i / 999.0));
      if (!(K > prev)) return std::pair{false, "break at index " + std::to_string(i)};
      prev = K;
    }
    return std::pair{true, std::string("strict")};
  });
}

void csc_profile_checks(Suite& s) {
  double agree = 0.0, fi = 0.0, even = 0.0, dT = 0.0, bc = 0.0;
  bool monotone = true;
  for_grid([&](const SolverParams& p) {
    const auto closed = solve_closed_form(p);
    const auto num = solve_numeric_ivp(p, 1e-12, 200);
    const double T = closed.half_length();
    for (const auto& x : num.grid()) {
      const auto j = jet(closed, std::clamp(x.t, -T, T));
      agree = std::max(agree, std::abs(j.f - x.f));
    }
    for (const auto* prof : {&closed, &num}) {
      const auto& g = prof->grid();
      for (std::size_t i = 0; i < g.size(); ++i) {
        fi = std::max(fi, std::abs(first_integral_residual(p, g[i].f, g[i].fp)));
        even = std::max(even, std::abs(g[i].f - g[g.size() - 1 - i].f));
        if (g[i].t < 0.0 && i > 0 && !(g[i].fp > 0.0)) monotone = false;
      }
      bc = std::max({bc, std::abs(g.front().f), std::abs(g.back().f), std::abs(g.front().fp - p.m()),
                     std::abs(g.back().fp + p.m())});
    }
    dT = std::max(dT, std::abs(num.half_length() / closed.consts().T - 1.0) / 1e-11);
  });
  s.bound("csc_profile", "closed form vs numeric IVP, sup |f| on 200 nodes", agree, 1e-9);
  s.bound("csc_profile", "first-integral residual sup", fi, 1e-10);
  s.bound("csc_profile", "evenness on mirrored nodes", even, 1e-12);
  s.bound("csc_profile", "boundary values f(+-T)=0, f'(+-T)=-+m", bc, 1e-9);
  s.bound("csc_profile", "numeric T within 10 tol of closed T (units of 10 tol)", dT, 1.0);
  s.run("csc_profile", "f' > 0 on (-T, 0)", [&] { return std::pair{monotone, std::string(monotone ? "strict" : "violated")}; });
  s.run("csc_profile", "boundary identity f_max mu k' = m at 50 random (m, R)", [] {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> md(1, 20);
    std::uniform_real_distribution<double> rd(-100.0, 100.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const SolverParams p(md(rng), rd(rng));
      const auto c = derive_constants(p);
      worst = std::max(worst, std::abs(c.f_max * c.mu * c.k_prime - p.m()) / p.m());
    }
    return std::pair{worst < 1e-12, "max rel " + sci(worst)};
  });
}

void curvature_checks(Suite& s) {
  const auto jets = random_jets(1000, 42);
  double three = 0.0, trace = 0.0, spread = 0.0, ric = 0.0, ts = 0.0, hess = 0.0;
  Vec4 first_gap{};
  bool have_gap = false;
  for (const auto& j : jets) {
    const auto d = bach_derdzinski(j);
    const auto c = bach_closed_scalar(j);
    const auto r16 = bach_closed_rho(j, kBachConstant16);
    const auto r11 = bach_closed_rho(j, kBachConstant11);
    const double scale = std::max(1.0, d.max_abs());
    three = std::max({three, component_gap(d, c) / scale, component_gap(d, r16) / scale});
    for (const auto& b : {d, c, r16, r11}) trace = std::max(trace, std::abs(b.trace()) / std::max(1.0, b.max_abs()));
    Vec4 gap{};
    for (int i = 0; i < 4; ++i) gap[i] = r11.components()[i] - d.components()[i];
    if (!have_gap) {
      first_gap = gap;
      have_gap = true;
    }
    for (int i = 0; i < 4; ++i) spread = std::max(spread, std::abs(gap[i] - first_gap[i]) / scale);
    const auto n = norm_invariants(j);
    const double rsum = n.ric[0] + n.ric[1] + n.ric[2] + n.ric[3];
    ric = std::max(ric, std::abs(rsum - n.R) / std::max(1.0, std::abs(n.R)));
    ts = std::max(ts, std::abs(n.tsric_sq - (n.ric_sq - n.r_sq / 4)) / std::max(1.0, n.ric_sq));
    const auto h = radial_hessian(j, 0.7, -0.3);
    hess = std::max(hess, std::abs(-(h.hess[0] + h.hess[1] + h.hess[2] + h.hess[3]) - h.laplacian));
  }
  s.bound("curvature", "three Bach routes agree on 1000 random jets (C=16)", three, 1e-9);
  s.bound("curvature", "trace-free, all routes and both constants", trace, 1e-10);
  s.bound("curvature", "rho-form C=11 offset is state independent", spread, 1e-9);
  s.run("curvature", "rho-form C=11 offset equals (5/6)(1,1,-1,-1)", [&] {
    const Vec4 want{5.0 / 6, 5.0 / 6, -5.0 / 6, -5.0 / 6};
    double e = 0.0;
    for (int i = 0; i < 4; ++i) e = std::max(e, std::abs(first_gap[i] - want[i]));
    return std::pair{e < 1e-9, "offset (" + sci(first_gap[0]) + ", " + sci(first_gap[2]) + "), error " + sci(e)};
  });
  s.bound("curvature", "R = sum of Ricci diagonal", ric, 1e-12);
  s.bound("curvature", "|tsRic|^2 = |Ric|^2 - R^2/4", ts, 1e-12);
  s.bound("curvature", "Laplacian = -trace Hessian", hess, 1e-12);
  s.run("curvature", "conformally flat f=1 gives Bach 0 (oracle, Bach1, C=16)", [] {
    const auto j = CurvatureState::from_jet(0, 1, 0, 0, 0, 0);
    const double e = std::max({bach_derdzinski(j).max_abs(), bach_closed_scalar(j).max_abs(),
                               bach_closed_rho(j, 16).max_abs(), norm_invariants(j).w_sq});
    return std::pair{e < 1e-14, "max " + sci(e)};
  });

  double rconst = 0.0, div = 0.0, reg = 0.0, reg_trace = 0.0;
  for_grid([&](const SolverParams& p) {
    const auto prof = solve_closed_form(p);
    for (const auto& g : prof.grid()) {
      const auto j = jet(prof, g.t);
      rconst = std::max(rconst, std::abs(scalar_curvature(j) - p.scalar_curvature()));
      const auto r = csc_bach_regular(p, j.f, j.fp);
      reg_trace = std::max(reg_trace, std::abs(r.trace()) / std::max(1.0, r.max_abs()));
      if (j.f >= 0.01) {
        const auto c = bach_closed_scalar(j);
        reg = std::max(reg, component_gap(r, c) / std::max(1.0, c.max_abs()));
      }
      if (j.f > 0.1) {
        const double h = 1e-5;
        const double T = prof.half_length();
        if (std::abs(g.t) + h >= T) continue;
        const double b4p = bach_derdzinski(jet(prof, g.t + h)).b4;
        const double b4m = bach_derdzinski(jet(prof, g.t - h)).b4;
        const auto b = bach_derdzinski(j);
        div = std::max(div, std::abs((b4p - b4m) / (2 * h) - j.fp / j.f * (b.b3 - b.b4)));
      }
    }
  });
  s.bound("curvature", "scalar curvature constant on every node incl. boundary", rconst, 1e-10);
  s.bound("curvature", "divergence identity dB4/dt = (f'/f)(B3-B4) by central difference", div, 1e-4);
  s.bound("curvature", "regularised CSC Bach matches Bach1 where f >= 0.01", reg, 1e-10);
  s.bound("curvature", "regularised CSC Bach trace-free", reg_trace, 1e-12);
  s.run("curvature", "|W|^2 by two routes (throws on disagreement)", [&] {
    for (const auto& j : jets) norm_invariants(j);
    return std::pair{true, std::string("1000 jets")};
  });

  s.run(
      "curvature", "div-trace (1,1) with -f^4 breaks trace-freeness of the assembly",
      [] {
        const auto j = CurvatureState::from_jet(0, 1, 0, 0, 0, 0);
        const auto short_form = ricci_laplacian_traces(j, TraceForm::minus_f4)[3];
        const auto fixed = ricci_laplacian_traces(j, TraceForm::minus_4f4)[3];
        return std::pair{short_form != fixed, "f=1: -f^4 form " + sci(short_form) + ", frame computation " + sci(fixed) +
                                               " (-f^4 vs -4f^4)"};
      },
      true);
  s.run(
      "curvature", "rho-form constant 11 vs 16",
      [&] {
        return std::pair{true, "C=11 is off by (5/6)(1,1,-1,-1); f=1 gives B1 = " +
                                   sci(bach_closed_rho(CurvatureState::from_jet(0, 1, 0, 0, 0, 0), 11).b1)};
      },
      true);
  s.run(
      "curvature", "|tsRic|^2 expansion with +24 f^2",
      [&] {
        double e = 0.0;
        for (const auto& j : jets) e = std::max(e, std::abs(variants::tsric_sq_plus24(j) - norm_invariants(j).tsric_sq));
        return std::pair{e > 1.0, "max deviation from identity " + sci(e)};
      },
      true);
  s.run(
      "curvature", "R^2 expansion with 4^4 for 4 f^4",
      [&] {
        double e = 0.0;
        for (const auto& j : jets) e = std::max(e, std::abs(variants::scalar_sq_four_pow_four(j) - norm_invariants(j).r_sq));
        return std::pair{e > 1.0, "max deviation from squared R " + sci(e)};
      },
      true);
}

void functionals_checks(Suite& s) {
  double quad = 0.0, cgb = 0.0, yam = 0.0, bt = 0.0, affine = 0.0;
  for (int m = 1; m <= 5; ++m) {
    for (double R = -32.0; R <= 32.0; R += 8.0) {
      const SolverParams p(m, R);
      const auto prof = solve_closed_form(p);
      const auto ci = closed_integrals(p);
      const double q0 = integrate_profile(prof, [](const CurvatureState&) { return 1.0; });
      const double q1 = integrate_profile(prof, [](const CurvatureState& j) { return j.f * j.f; });
      const double q2 = integrate_profile(prof, [](const CurvatureState& j) { return std::pow(j.f, 4); });
      quad = std::max({quad, std::abs(q0 / ci.int_f - 1), std::abs(q1 / ci.int_f3 - 1), std::abs(q2 / ci.int_f5 - 1)});
    }
  }
  for_grid([&](const SolverParams& p) {
    const auto prof = solve_closed_form(p);
    cgb = std::max(cgb, std::abs(cgb_check(prof) / (16.0 * p.m()) - 1));
    const double vol = quadrature(prof, [](const CurvatureState&) { return 1.0; });
    if (p.scalar_curvature() != 0.0) {
      yam = std::max(yam, std::abs(yamabe_value(p) / (p.scalar_curvature() * std::sqrt(vol)) - 1));
    }
    const double r2 = quadrature(prof, [](const CurvatureState& j) { return std::pow(scalar_curvature(j), 2); });
    for (double t : {-1.0, 0.0, 1.0, 59.0 / 6}) {
      const double closed = bt_value(p, t);
      bt = std::max(bt, std::abs(bt_quadrature(prof, t) - closed) / std::max(1.0, std::abs(closed)));
      const double slope = (bt_value(p, t) - bt_value(p, 0.0)) / (t == 0.0 ? 1.0 : t);
      if (t != 0.0) affine = std::max(affine, std::abs(slope - r2) / std::max(1.0, std::abs(r2)));
    }
  });
  s.bound("functionals", "quadrature of f, f^3, f^5 vs closed forms on 5x9 grid", quad, 1e-8);
  s.bound("functionals", "Chern-Gauss-Bonnet integral = 16 m", cgb, 1e-6);
  s.bound("functionals", "Yamabe closed form = R sqrt(Vol)", yam, 1e-10);
  s.bound("functionals", "B_t closed form vs quadrature", bt, 1e-7);
  s.bound("functionals", "B_t slope in t = int R^2 dVol", affine, 1e-9);
  s.run("functionals", "volume(1, 8) = sqrt2 pi^3", [] {
    const double v = quadrature(solve_closed_form(SolverParams(1, 8)), [](const CurvatureState&) { return 1.0; });
    const double e = std::abs(v / (std::numbers::sqrt2 * pi * pi * pi) - 1);
    return std::pair{e < 1e-10, "rel " + sci(e)};
  });

  s.run("functionals", "Weyl first variation proportional to B3 pairing over 10 bumps", [] {
    const auto prof = solve_closed_form(SolverParams(1, 8));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> cd(-0.7, 0.7), wd(0.15, 0.6), ad(0.3, 1.0);
    double c0 = 0.0, worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const auto v = weyl_first_variation(prof, Bump{cd(rng), wd(rng), ad(rng)});
      if (i == 0) c0 = v.ratio;
      worst = std::max(worst, std::abs(v.ratio / c0 - 1));
    }
    return std::pair{worst < 2e-3, "c = " + io::format_double(c0) + ", spread " + sci(worst)};
  });

  s.run("functionals", "eigen bounds ordered on {1..5} x [-40, 40]; R > 24 tagged unstable", [] {
    bool ok = true;
    for (int m = 1; m <= 5; ++m) {
      for (double R = -40.0; R <= 40.0; R += 0.5) {
        const auto e = eigen_bounds(SolverParams(m, R));
        ok = ok && e.fiber_lower < e.fiber_upper;
        ok = ok && ((R > 24.0) == (e.stability == Stability::unstable_R_gt_24));
      }
    }
    return std::pair{ok, std::string(ok ? "805 cells" : "violated")};
  });
  s.run(
      "functionals", "reference Yamabe value 52.97531 for g_1(8)",
      [] {
        const double y = yamabe_value(SolverParams(1, 8));
        return std::pair{true, "closed form gives " + io::format_double(y) + ", off by " + sci(y - 52.97531)};
      },
      true);
  s.run(
      "functionals", "reference B_0 value 1250.63 for g_1(8)",
      [] {
        const double b = bt_value(SolverParams(1, 8), 0.0);
        return std::pair{true, "closed form gives " + io::format_double(b)};
      },
      true);
}

void bachflat_checks(Suite& s) {
  s.run("bachflat", "forced parabola constants 7/12, 53/12 (C=11) and 1, 4 (C=16)", [] {
    const double e = std::max({std::abs(forced_parabola_constant(1, 11) - 7.0 / 12),
                               std::abs(forced_parabola_constant(4, 11) - 53.0 / 12),
                               std::abs(forced_parabola_constant(1, 16) - 1.0), std::abs(forced_parabola_constant(4, 16) - 4.0)});
    return std::pair{e < 1e-12, "max " + sci(e)};
  });
  s.run("bachflat", "parabolas 7/12 and 53/12 solve the C=11 equation on [0, 3]", [] {
    double worst = 0.0;
    for (const ParabolaFamily p : {ParabolaFamily{1, 7.0 / 12}, ParabolaFamily{4, 53.0 / 12}}) {
      for (int i = 0; i <= 3000; ++i) {
        const double x = 3.0 * i / 3000.0;
        worst = std::max(worst, std::abs(residual({x, p.y(x), p.yp(x), 11.0}, p.ypp())));
      }
    }
    return std::pair{worst < 1e-12, "max " + sci(worst)};
  });
  s.run("bachflat", "shooting stays on the C=11 parabolas", [] {
    double worst = 0.0;
    std::string tags;
    for (const ParabolaFamily p : {ParabolaFamily{1, 7.0 / 12}, ParabolaFamily{4, 53.0 / 12}}) {
      const auto tr = shoot(0.0, p.y(0.0), p.yp(0.0), 11.0, 0.5, 1e-12);
      for (const auto& x : tr.samples) worst = std::max(worst, std::abs(x.y - p.y(x.x)));
      tags += std::string(to_string(tr.termination)) + "@" + io::format_double(tr.samples.back().x) + " ";
    }
    return std::pair{worst < 1e-9, "max " + sci(worst) + ", " + tags};
  });
  s.run("bachflat", "shot residual with integrator derivative < 10 tol", [] {
    const double tol = 1e-10;
    double worst = 0.0;
    for (double y0 : {0.3, 1.0, 3.0}) {
      const auto tr = shoot(0.1, y0, -0.5, 11.0, 2.0, tol);
      for (const auto& x : tr.samples) {
        const BachFlatState st{x.x, x.y, x.yp, 11.0};
        worst = std::max(worst, std::abs(residual(st, bachflat_ypp(st))));
      }
    }
    return std::pair{worst < 10 * tol, "max " + sci(worst)};
  });
  s.run("bachflat", "CSC first-integral curves are not Bach-flat", [] {
    double weakest = 1e300;
    for (int m : {1, 2, 3}) {
      for (double R : kRs) {
        const double beta = SolverParams(m, R).beta();
        for (double C : {11.0, 16.0}) {
          double sup = 0.0;
          for (int i = 0; i <= 200; ++i) {
            const double x = 3.0 * i / 200.0;
            const double y = (-x * x + 2 * beta * x + 2.0 * m * m) / 2;
            sup = std::max(sup, std::abs(residual({x, y, -x + beta, C}, -1.0)));
          }
          weakest = std::min(weakest, sup);
        }
      }
    }
    return std::pair{weakest > 0.5, "smallest sup residual " + sci(weakest)};
  });
  s.run("bachflat", "constants 7/12 and 53/12 are not integer squares", [] {
    const bool ok = !integer_boundary_slope(7.0 / 12) && !integer_boundary_slope(53.0 / 12);
    return std::pair{ok, std::string("7/12 and 53/12 rejected")};
  });
  s.run("bachflat", "sup|B4| >= 0.1 on g_1(8), peak (184-128 sqrt2)/24 at t=0", [] {
    const auto prof = solve_closed_form(SolverParams(1, 8));
    const double sup = b4_residual_on_profile(prof, 16) / 6.0;
    const double peak = bach_derdzinski(jet(prof, 0.0)).b4;
    const double e = std::abs(peak - (184 - 128 * std::numbers::sqrt2) / 24);
    return std::pair{sup >= 0.1 && e < 1e-9, "sup " + io::format_double(sup) + ", peak error " + sci(e)};
  });
  s.run("bachflat", "particular solutions give |6 B4| < 1e-9 on mapped jets", [] {
    double worst = 0.0;
    for (auto [a, c, C] : {std::tuple{1.0, 7.0 / 12, 11.0}, std::tuple{4.0, 4.0, 16.0}}) {
      const ParabolaFamily p{a, c};
      std::vector<CurvatureState> jets;
      for (int i = 0; i <= 100; ++i) {
        const double x = 0.05 + 2.5 * i / 100.0;
        if (p.y(x) <= 1e-6) continue;
        jets.push_back(jet_from_xy(x, p.y(x), p.yp(x), p.ypp()));
      }
      worst = std::max(worst, b4_residual_on_jets(jets, C));
    }
    return std::pair{worst < 1e-9, "max " + sci(worst)};
  });
  s.run("bachflat", "first-integral curve mapped to t recovers the closed form", [] {
    const SolverParams p(1, 8);
    const auto prof = solve_closed_form(p);
    const double fmax = prof.consts().f_max;
    BachFlatTrajectory tr;
    const int n = 400;
    const double xmax = fmax * fmax * (1 - 1e-3);
    for (int i = 0; i <= n; ++i) {
      const double x = xmax * i / n;
      tr.samples.push_back({x, (-x * x + 2.0) / 2, -x});
    }
    tr.termination = Termination::reached_x_limit;
    const auto pts = trajectory_to_profile(tr);
    const double T = prof.half_length();
    double worst = 0.0;
    for (const auto& q : pts) worst = std::max(worst, std::abs(jet(prof, q.t - T).f - q.f));
    return std::pair{worst < 1e-7, "max " + sci(worst)};
  });
  s.run(
      "bachflat", "C=16 particular solutions against the integer-slope screen",
      [] {
        const auto a = integer_boundary_slope(1.0);
        const auto b = integer_boundary_slope(4.0);
        return std::pair{true, "y(0)=1 -> m=" + std::to_string(a.value_or(0)) + ", y(0)=4 -> m=" +
                                   std::to_string(b.value_or(0)) + "; on y=a(x-1)^2, f' = sqrt(a)(1-f^2) only reaches f=1 as t -> inf"};
      },
      true);
}

void io_checks(Suite& s) {
  s.run("cli_io", "profile JSON round trip is bit exact", [] {
    for (const auto& prof : {solve_closed_form(SolverParams(2, 3.7), 64), solve_numeric_ivp(SolverParams(1, -8), 1e-11, 64)}) {
      const std::string a = io::profile_to_string(prof);
      const auto back = io::profile_from_string(a);
      if (io::profile_to_string(back) != a) return std::pair{false, std::string("text differs")};
      for (std::size_t i = 0; i < prof.grid().size(); ++i) {
        const auto& x = prof.grid()[i];
        const auto& y = back.grid()[i];
        if (x.t != y.t || x.f != y.f || x.fp != y.fp || x.fpp != y.fpp) return std::pair{false, std::string("sample differs")};
      }
      if (back.consts().T != prof.consts().T || back.consts().k != prof.consts().k) {
        return std::pair{false, std::string("constants differ")};
      }
    }
    return std::pair{true, std::string("closed and numeric")};
  });
  s.run("cli_io", "CSV output deterministic", [] {
    auto make = [] {
      return io::trajectory_csv(shoot(0.0, 1.0, -1.0, 11.0, 1.0, 1e-10)) +
             io::grid_csv(grid_search(0.0, {0.5, 1.0}, {-1.0, 0.0}, 16.0, 1.0, 1e-9, 2));
    };
    return std::pair{make() == make(), std::string("two runs compared")};
  });
}

}  // namespace

std::vector<CheckResult> run_invariant_suite() {
  Suite s;
  s.guard("special_fn", [&] { special_fn_checks(s); });
  s.guard("csc_profile", [&] { csc_profile_checks(s); });
  s.guard("curvature", [&] { curvature_checks(s); });
  s.guard("functionals", [&] { functionals_checks(s); });
  s.guard("bachflat", [&] { bachflat_checks(s); });
  s.guard("cli_io", [&] { io_checks(s); });
  return s.take();
}

bool suite_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed || r.finding; });
}

}  // namespace hcsc
