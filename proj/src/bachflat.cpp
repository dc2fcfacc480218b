#include "hcsc/bachflat.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/numeric/odeint.hpp>

#include "hcsc/curvature.hpp"
#include "hcsc/errors.hpp"

namespace hcsc {
namespace {

namespace odeint = boost::numeric::odeint;

using XYState = std::array<double, 2>;  // (y, y')
using ErrorStepper = odeint::runge_kutta_fehlberg78<XYState>;

constexpr double kBlowup = 1e12;
constexpr double kMinF = 0.1;

struct BachFlatRhs {
  double C;
  void operator()(const XYState& s, XYState& ds, double x) const {
    ds[0] = s[1];
    ds[1] = bachflat_ypp({x, s[0], s[1], C});
  }
};

// Cubic Hermite interpolant on [x0, x1] with values y and slopes yp.
struct Hermite {
  double x0, x1, y0, y1, d0, d1;

  double value(double x) const {
    const double h = x1 - x0;
    const double u = (x - x0) / h;
    const double u2 = u * u;
    const double u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * d0 + (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * h * d1;
  }
  double slope(double x) const {
    const double h = x1 - x0;
    const double u = (x - x0) / h;
    const double u2 = u * u;
    return ((6 * u2 - 6 * u) * y0 + (-6 * u2 + 6 * u) * y1) / h + (3 * u2 - 4 * u + 1) * d0 + (3 * u2 - 2 * u) * d1;
  }
};

double hermite_root(const Hermite& h) {
  double lo = h.x0;
  double hi = h.x1;
  for (int i = 0; i < 200 && lo != hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (h.value(mid) > 0.0 ? lo : hi) = mid;
  }
  return hi;
}

bool blown_up(const XYState& s) {
  return !std::isfinite(s[0]) || !std::isfinite(s[1]) || std::abs(s[0]) > kBlowup || std::abs(s[1]) > kBlowup;
}

}  // namespace

double residual(const BachFlatState& s, double ypp) {
  return 4.0 * s.y * ypp - s.yp * s.yp - 20.0 * s.y + 16.0 * s.x * s.x - 32.0 * s.x + s.C;
}

double bachflat_ypp(const BachFlatState& s) {
  return (s.yp * s.yp + 20.0 * s.y - 16.0 * s.x * s.x + 32.0 * s.x - s.C) / (4.0 * s.y);
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::reached_y_zero: return "reached_y_zero";
    case Termination::reached_x_limit: return "reached_x_limit";
    case Termination::singular_blowup: return "singular_blowup";
    case Termination::step_underflow: return "step_underflow";
  }
  return "unknown";
}

BachFlatTrajectory shoot(double x0, double y0, double yp0, double C, double x_max, double tol) {
  if (!(y0 > 0.0)) {
    throw PreconditionError("shoot: y0 must be positive (the equation is singular at y = 0)");
  }
  if (!(tol > 0.0) || !std::isfinite(x_max) || x_max == x0) {
    throw std::invalid_argument("shoot: need tol > 0 and x_max != x0");
  }
  BachFlatTrajectory traj{{{x0, y0, yp0}}, {x0, y0, yp0, C, x_max, tol}, Termination::reached_x_limit};

  const BachFlatRhs rhs{C};
  auto stepper = odeint::make_controlled(tol, tol, ErrorStepper());
  const double dir = x_max > x0 ? 1.0 : -1.0;
  const double span = std::abs(x_max - x0);
  const double h_floor = 1e-13 * std::max(std::abs(x_max), span);
  const double event_resolution = 1e-12 * std::max(1.0, span);

  XYState s{y0, yp0};
  double x = x0;
  double h = dir * std::min(1e-3, span / 100.0);
  constexpr int kMaxSteps = 10000000;
  for (int step = 0; step < kMaxSteps; ++step) {
    const double remaining = std::abs(x_max - x);
    if (remaining <= 0.0) {
      traj.termination = Termination::reached_x_limit;
      return traj;
    }
    if (std::abs(h) > remaining) h = dir * remaining;

    const XYState prev = s;
    const double x_prev = x;
    odeint::controlled_step_result res = odeint::fail;
    while ((res = stepper.try_step(rhs, s, x, h)) == odeint::fail) {
      if (blown_up(s) || std::abs(h) < h_floor) break;
    }
    if (res == odeint::fail) {
      s = prev;
      x = x_prev;
      traj.termination = std::abs(h) < h_floor ? Termination::step_underflow : Termination::singular_blowup;
      return traj;
    }
    if (blown_up(s)) {
      traj.termination = Termination::singular_blowup;
      return traj;
    }
    if (s[0] <= 0.0) {
      const double taken = x - x_prev;
      if (std::abs(taken) > event_resolution) {
        // Retry the crossing step at half length; the zero is approached from y > 0.
        s = prev;
        x = x_prev;
        h = 0.5 * taken;
        continue;
      }
      const Hermite herm{x_prev, x, prev[0], s[0], prev[1], s[1]};
      const double xe = hermite_root(herm);
      if (dir * (xe - x_prev) > 0.0) {
        traj.samples.push_back({xe, 0.0, herm.slope(xe)});
      }
      traj.termination = Termination::reached_y_zero;
      return traj;
    }
    if (dir * (x - x_max) >= -1e-15 * std::max(1.0, std::abs(x_max))) x = x_max;
    traj.samples.push_back({x, s[0], s[1]});
    if (std::abs(h) < h_floor) {
      traj.termination = Termination::step_underflow;
      return traj;
    }
  }
  traj.termination = Termination::step_underflow;
  return traj;
}

CurvatureState jet_from_xy(double x, double y, double yp, double ypp) {
  const double f = std::sqrt(x);
  const double fp = std::sqrt(y);
  const double fpp = f * yp;
  // y'' = (rho3 - rho1 rho2) / (2 f f')  =>  f''' = f (2 f f' y'' + rho1 rho2).
  const double fppp = f * (2.0 * f * fp * ypp + (fp / f) * yp);
  return CurvatureState::from_jet(0.0, f, fp, fpp, fppp, std::numeric_limits<double>::quiet_NaN());
}

double b4_residual_on_jets(const std::vector<CurvatureState>& jets, double C) {
  double sup = 0.0;
  for (const auto& s : jets) {
    if (s.f > kMinF) {
      sup = std::max(sup, std::abs(bach4_rho_scaled(s, C)));
    }
  }
  return sup;
}

double b4_residual_on_profile(const MetricProfile& profile, double C) {
  std::vector<CurvatureState> jets;
  jets.reserve(profile.grid().size());
  for (const auto& sample : profile.grid()) {
    jets.push_back(jet(profile, sample.t));
  }
  return b4_residual_on_jets(jets, C);
}

double forced_parabola_constant(double a, double C) {
  auto r = [&](double c, double x) {
    const ParabolaFamily p{a, c};
    return residual({x, p.y(x), p.yp(x), C}, p.ypp());
  };
  const double probe = 0.37;
  const double r0 = r(0.0, probe);
  const double r1 = r(1.0, probe);
  const double c = -r0 / (r1 - r0);
  for (double x : {0.0, 0.5, 1.0, 1.7, 3.0}) {
    const double scale = std::max({1.0, 16.0 * x * x, std::abs(a * c)});
    if (std::abs(r(c, x)) > 1e-10 * scale) {
      throw InconsistencyError("forced_parabola_constant: no constant c makes this family a solution");
    }
  }
  return c;
}

std::optional<int> integer_boundary_slope(double y_at_zero) {
  if (!(y_at_zero > 0.0)) return std::nullopt;
  const double m = std::round(std::sqrt(y_at_zero));
  if (m >= 1.0 && std::abs(m * m - y_at_zero) <= 1e-12 * std::max(1.0, y_at_zero)) {
    return static_cast<int>(m);
  }
  return std::nullopt;
}

std::vector<ProfilePoint> trajectory_to_profile(const BachFlatTrajectory& traj) {
  const auto& s = traj.samples;
  if (s.size() < 2) {
    throw PreconditionError("trajectory_to_profile: need at least two samples");
  }
  const double dir = s[1].x > s[0].x ? 1.0 : -1.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i].y > 0.0) || s[i].x < 0.0) {
      throw PreconditionError("trajectory_to_profile: y must be positive and x non-negative along the arc");
    }
    if (i > 0 && !(dir * (s[i].x - s[i - 1].x) > 0.0)) {
      throw PreconditionError("trajectory_to_profile: arc is not monotone in x");
    }
  }

  using Gauss = boost::math::quadrature::gauss<double, 16>;
  std::vector<ProfilePoint> out;
  out.reserve(s.size());
  double t = 0.0;
  out.push_back({t, std::sqrt(s[0].x), dir * std::sqrt(s[0].y)});
  for (std::size_t i = 1; i < s.size(); ++i) {
    const Hermite herm{s[i - 1].x, s[i].x, s[i - 1].y, s[i].y, s[i - 1].yp, s[i].yp};
    const double fa = std::sqrt(s[i - 1].x);
    const double fb = std::sqrt(s[i].x);
    const double dt = Gauss::integrate(
        [&](double phi) {
          const double y = herm.value(phi * phi);
          if (!(y > 0.0)) {
            throw PreconditionError("trajectory_to_profile: interpolated y not positive");
          }
          return 1.0 / std::sqrt(y);
        },
        std::min(fa, fb), std::max(fa, fb));
    t += dt;
    out.push_back({t, fb, dir * std::sqrt(s[i].y)});
  }
  return out;
}

std::vector<GridShot> grid_search(double x0, const std::vector<double>& y0s, const std::vector<double>& yp0s,
                                  double C, double x_max, double tol, unsigned threads) {
  std::vector<GridShot> out(y0s.size() * yp0s.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < out.size(); idx = next++) {
      const double y0 = y0s[idx / yp0s.size()];
      const double yp0 = yp0s[idx % yp0s.size()];
      const BachFlatTrajectory tr = shoot(x0, y0, yp0, C, x_max, tol);
      double min_y = std::numeric_limits<double>::infinity();
      for (const auto& p : tr.samples) min_y = std::min(min_y, p.y);
      out[idx] = {y0, yp0, tr.termination, min_y, tr.samples.back().x};
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(out.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace hcsc
