#include <cmath>

#include "doctest.h"
#include "hcsc/bachflat.hpp"
#include "hcsc/csc_profile.hpp"
#include "hcsc/curvature.hpp"
#include "hcsc/errors.hpp"

using namespace hcsc;

TEST_SUITE("bachflat") {
  TEST_CASE("residual examples") {
    CHECK(residual({0, 7.0 / 12, -2, 11}, 2) == doctest::Approx(0.0));
    CHECK(residual({0, 53.0 / 12, -8, 11}, 8) == doctest::Approx(0.0));
    CHECK(residual({0, 1, -2, 16}, 2) == 0.0);
    CHECK(residual({2, 3, 1, 11}, 0) == doctest::Approx(-1 - 60 + 64 - 64 + 11));
  }

  TEST_CASE("parabola families") {
    CHECK(forced_parabola_constant(1, 11) == doctest::Approx(7.0 / 12).epsilon(1e-15));
    CHECK(forced_parabola_constant(4, 11) == doctest::Approx(53.0 / 12).epsilon(1e-15));
    CHECK(forced_parabola_constant(1, 16) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(forced_parabola_constant(4, 16) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK_THROWS_AS(forced_parabola_constant(2, 11), InconsistencyError);
  }

  TEST_CASE("integer boundary screen") {
    CHECK_FALSE(integer_boundary_slope(7.0 / 12).has_value());
    CHECK_FALSE(integer_boundary_slope(53.0 / 12).has_value());
    CHECK(integer_boundary_slope(4.0) == 2);
    CHECK(integer_boundary_slope(9.0) == 3);
  }

  TEST_CASE("shooting along the C=11 parabolas") {
    const ParabolaFamily a{1, 7.0 / 12}, b{4, 53.0 / 12};
    const auto ta = shoot(0, a.y(0), a.yp(0), 11, 0.5, 1e-12);
    CHECK(ta.termination == Termination::reached_y_zero);
    CHECK(ta.samples.back().x == doctest::Approx(1 - std::sqrt(5.0 / 12)).epsilon(1e-9));
    for (const auto& s : ta.samples) CHECK(std::abs(s.y - a.y(s.x)) < 1e-9);
    const auto tb = shoot(0, b.y(0), b.yp(0), 11, 0.5, 1e-12);
    CHECK(tb.termination == Termination::reached_x_limit);
    CHECK(tb.samples.back().x == 0.5);
    for (const auto& s : tb.samples) CHECK(std::abs(s.y - b.y(s.x)) < 1e-9);
    for (std::size_t i = 1; i < tb.samples.size(); ++i) CHECK(tb.samples[i].x > tb.samples[i - 1].x);
  }

  TEST_CASE("perturbed start leaves the parabola") {
    const ParabolaFamily b{4, 53.0 / 12};
    const auto t = shoot(0, b.y(0) + 1e-6, b.yp(0), 11, 3, 1e-12);
    double dev = 0;
    for (const auto& s : t.samples) {
      CHECK(std::isfinite(s.y));
      dev = std::max(dev, std::abs(s.y - b.y(s.x)));
    }
    CHECK(dev > 1e-6);
  }

  TEST_CASE("shoot preconditions") {
    CHECK_THROWS_AS(shoot(0, 0, 1, 11, 1, 1e-10), PreconditionError);
    CHECK_THROWS_AS(shoot(0, -1, 1, 11, 1, 1e-10), PreconditionError);
  }

  TEST_CASE("B4 residual on profiles and particular solutions") {
    const auto prof = solve_closed_form(SolverParams(1, 8));
    CHECK(b4_residual_on_profile(prof, 16) / 6 >= 0.1);
    std::vector<CurvatureState> a, b;
    for (int i = 0; i <= 50; ++i) {
      const double x = 0.02 + 0.006 * i;
      const ParabolaFamily p{1, 7.0 / 12};
      a.push_back(jet_from_xy(x, p.y(x), p.yp(x), p.ypp()));
      const double x2 = 0.05 + 0.05 * i;
      if (std::abs(x2 - 1) > 0.05) b.push_back(jet_from_xy(x2, 4 * (x2 - 1) * (x2 - 1), 8 * (x2 - 1), 8));
    }
    CHECK(b4_residual_on_jets(a, 11) < 1e-9);
    CHECK(b4_residual_on_jets(b, 16) < 1e-9);
    CHECK(b4_residual_on_jets(a, 16) > 1);
  }

  TEST_CASE("trajectory to profile") {
    BachFlatTrajectory line;
    for (int i = 0; i <= 20; ++i) line.samples.push_back({0.05 * i, 4.0, 0.0});
    const auto pts = trajectory_to_profile(line);
    for (const auto& p : pts) CHECK(p.f == doctest::Approx(2 * p.t).epsilon(1e-12));

    const auto prof = solve_closed_form(SolverParams(1, 8));
    BachFlatTrajectory fi;
    for (int i = 0; i <= 300; ++i) {
      const double x = 1.4 * i / 300;
      fi.samples.push_back({x, (2 - x * x) / 2, -x});
    }
    for (const auto& p : trajectory_to_profile(fi)) {
      CHECK(std::abs(jet(prof, p.t - prof.half_length()).f - p.f) < 1e-7);
      CHECK(std::abs(p.fp * p.fp - (2 - std::pow(p.f, 4)) / 2) < 1e-8);
    }

    BachFlatTrajectory bad = fi;
    bad.samples[3].x = bad.samples[2].x;
    CHECK_THROWS_AS(trajectory_to_profile(bad), PreconditionError);
  }

  TEST_CASE("grid search is deterministic across thread counts") {
    const std::vector<double> y0s{0.5, 1.0, 2.0}, yp0s{-1.0, 0.0, 1.0};
    const auto a = grid_search(0, y0s, yp0s, 11, 2, 1e-10, 1);
    const auto b = grid_search(0, y0s, yp0s, 11, 2, 1e-10, 3);
    REQUIRE(a.size() == 9);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].y0 == b[i].y0);
      CHECK(a[i].termination == b[i].termination);
      CHECK(a[i].x_at_termination == b[i].x_at_termination);
      CHECK(a[i].min_y == b[i].min_y);
    }
  }
}
