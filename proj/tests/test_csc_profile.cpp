#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hcsc/csc_profile.hpp"
#include "hcsc/errors.hpp"
#include "hcsc/special_fn.hpp"

using namespace hcsc;

TEST_SUITE("csc_profile") {
  TEST_CASE("parameters") {
    CHECK_THROWS_AS(SolverParams(0, 8), std::invalid_argument);
    CHECK_THROWS_AS(SolverParams(1, std::numeric_limits<double>::infinity()), std::invalid_argument);
    CHECK(SolverParams(1, 8).beta() == 0.0);
    CHECK(SolverParams(1, 0).beta() == 4.0);
    CHECK(SolverParams::from_beta(2, -3.0).scalar_curvature() == 14.0);
  }

  TEST_CASE("constants of g_1(8)") {
    const auto c = derive_constants(SolverParams(1, 8));
    CHECK(c.k == doctest::Approx(1 / std::numbers::sqrt2).epsilon(1e-15));
    CHECK(c.T == doctest::Approx(1.854074677301372 / std::pow(2.0, 0.25)).epsilon(1e-14));
    CHECK(c.T == doctest::Approx(1.5590847497554).epsilon(1e-12));
    CHECK(c.f_max == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-15));
  }

  TEST_CASE("constant invariants over random parameters") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> md(1, 30);
    std::uniform_real_distribution<double> rd(-200, 200);
    for (int i = 0; i < 50; ++i) {
      const SolverParams p(md(rng), rd(rng));
      const auto c = derive_constants(p);
      const double b = p.beta(), s = std::sqrt(2.0 * p.m() * p.m() + b * b);
      CHECK(c.k > 0);
      CHECK(c.k < 1);
      CHECK(std::abs(c.k * c.k - (1 + b / s) / 2) < 1e-15);
      // b + s cancels for b < 0; use the conjugate 2m^2/(s - b) there
      const double fmax2 = b >= 0 ? b + s : 2.0 * p.m() * p.m() / (s - b);
      CHECK(std::abs(c.f_max * c.f_max / fmax2 - 1) < 1e-14);
      CHECK(std::abs(c.T / (complete_elliptic_k(c.modulus()) / std::sqrt(s)) - 1) < 1e-13);
      CHECK(std::abs(c.f_max * c.mu * c.k_prime - p.m()) < 1e-12 * p.m());
    }
  }

  TEST_CASE("closed form endpoints and jet") {
    const SolverParams p(1, 8);
    const auto prof = solve_closed_form(p);
    CHECK(prof.grid().size() == kDefaultGridSize);
    const auto j0 = jet(prof, 0.0);
    CHECK(j0.f == doctest::Approx(std::pow(2.0, 0.25)));
    CHECK(j0.fp == 0.0);
    CHECK(j0.fpp == doctest::Approx(-std::pow(2.0, 0.75)).epsilon(1e-14));
    CHECK(j0.fppp == 0.0);
    const auto jT = jet(prof, prof.half_length());
    CHECK(std::abs(jT.f) < 1e-14);
    CHECK(std::abs(jT.fp + 1) < 1e-12);
    CHECK(std::abs(jT.fpppp) < 1e-12);
    CHECK(std::abs(prof.grid().back().fp + 1) < 1e-12);
    CHECK_THROWS_AS(jet(prof, prof.half_length() * 1.001), DomainError);
    const auto p2 = solve_closed_form(SolverParams(2, 8));
    CHECK(std::abs(p2.grid().back().fp + 2) < 1e-12);
  }

  TEST_CASE("Chebyshev nodes mirrored") {
    const auto x = chebyshev_nodes(1.3, 101);
    CHECK(x.front() == -1.3);
    CHECK(x.back() == 1.3);
    CHECK(x[50] == 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i] == -x[x.size() - 1 - i]);
  }

  TEST_CASE("numeric IVP agrees with the closed form") {
    for (int m : {1, 2, 3}) {
      for (double R : {-8.0, 0.0, 8.0, 24.0, 40.0}) {
        const SolverParams p(m, R);
        const auto c = solve_closed_form(p);
        const auto n = solve_numeric_ivp(p, 1e-12);
        CHECK(std::abs(n.half_length() / c.consts().T - 1) < 10e-12);
        double sup = 0, fi = 0;
        for (const auto& s : n.grid()) {
          sup = std::max(sup, std::abs(jet(c, std::clamp(s.t, -c.half_length(), c.half_length())).f - s.f));
          fi = std::max(fi, std::abs(first_integral_residual(p, s.f, s.fp)));
        }
        CHECK(sup < 1e-9);
        CHECK(fi < 1e-10);
        CHECK(std::abs(n.grid().back().fp + m) < 1e-9);
        CHECK(std::abs(n.grid().front().fp - m) < 1e-9);
      }
    }
  }

  TEST_CASE("numeric IVP tolerance range") {
    CHECK_THROWS_AS(solve_numeric_ivp(SolverParams(1, 8), 1e-5), std::invalid_argument);
    CHECK_THROWS_AS(solve_numeric_ivp(SolverParams(1, 8), 1e-14), std::invalid_argument);
    const auto loose = solve_numeric_ivp(SolverParams(3, 24), 1e-8, 64);
    CHECK(std::abs(loose.half_length() / loose.consts().T - 1) < 1e-7);
  }

  TEST_CASE("profile shape") {
    const auto prof = solve_closed_form(SolverParams(2, -8));
    const auto& g = prof.grid();
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
      CHECK(g[i].f > 0);
      if (g[i].t < 0) CHECK(g[i].fp > 0);
      CHECK(std::abs(g[i].f - g[g.size() - 1 - i].f) < 1e-12);
    }
  }

  TEST_CASE("generator names") {
    CHECK(generator_from_string("numeric_ivp") == Generator::numeric_ivp);
    CHECK(to_string(Generator::closed_form) == "closed_form");
    CHECK_THROWS(generator_from_string("rk4"));
  }
}
