#include "hcsc/csc_profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/numeric/odeint.hpp>

#include "hcsc/errors.hpp"

namespace hcsc {
namespace {

namespace odeint = boost::numeric::odeint;

using PhaseState = std::array<double, 2>;
using ErrorStepper = odeint::runge_kutta_fehlberg78<PhaseState>;

struct DuffingRhs {
  double beta;
  void operator()(const PhaseState& y, PhaseState& dy, double /*t*/) const {
    dy[0] = y[1];
    dy[1] = -y[0] * y[0] * y[0] + beta * y[0];
  }
};

constexpr double kEventResolution = 1e-14;
constexpr double kMinTol = 1e-13;
constexpr double kMaxTol = 1e-6;

auto make_stepper(double tol) { return odeint::make_controlled(tol, tol, ErrorStepper()); }

// Walks from t = 0 in the given direction until f changes sign, then bisects
// on the length of a single RK78 step from the last accepted point.
double locate_zero(const SolverParams& params, const EllipticConstants& c, double tol, double direction) {
  const DuffingRhs rhs{params.beta()};
  auto stepper = make_stepper(tol);
  ErrorStepper single;
  const double limit = 4.0 * c.T;

  PhaseState y{c.f_max, 0.0};
  double t = 0.0;
  double dt = direction * std::min(0.01, 0.01 * c.T);
  constexpr int kMaxSteps = 1000000;
  for (int step = 0; step < kMaxSteps; ++step) {
    const PhaseState y_prev = y;
    const double t_prev = t;
    while (stepper.try_step(rhs, y, t, dt) == odeint::fail) {
    }
    if (y[0] <= 0.0) {
      double lo = 0.0;
      double hi = t - t_prev;
      const double resolution = kEventResolution * std::max(1.0, c.T);
      while (std::abs(hi - lo) > resolution) {
        const double mid = 0.5 * (lo + hi);
        PhaseState trial = y_prev;
        single.do_step(rhs, trial, t_prev, mid);
        if (trial[0] > 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return std::abs(t_prev + 0.5 * (lo + hi));
    }
    if (std::abs(t) > limit) {
      break;
    }
  }
  throw ConvergenceError("numeric IVP: zero of f not bracketed within 4 T_predicted");
}

// Integrates from t = 0 through the given monotone node times.
std::vector<PhaseState> sample_along(const SolverParams& params, const EllipticConstants& c, double tol,
                                     const std::vector<double>& times) {
  const DuffingRhs rhs{params.beta()};
  std::vector<double> with_origin;
  with_origin.reserve(times.size() + 1);
  with_origin.push_back(0.0);
  with_origin.insert(with_origin.end(), times.begin(), times.end());
  std::vector<PhaseState> out;
  out.reserve(with_origin.size());
  PhaseState y{c.f_max, 0.0};
  const double dt0 = times.empty() || times.back() >= 0.0 ? 1e-3 : -1e-3;
  odeint::integrate_times(make_stepper(tol), rhs, y, with_origin.begin(), with_origin.end(), dt0,
                          [&](const PhaseState& s, double) { out.push_back(s); });
  out.erase(out.begin());
  return out;
}

}  // namespace

SolverParams::SolverParams(int m, double scalar_curvature) : m_(m), scalar_curvature_(scalar_curvature) {
  if (m < 1) {
    throw std::invalid_argument("Hirzebruch index m must be >= 1");
  }
  if (!std::isfinite(scalar_curvature)) {
    throw std::invalid_argument("scalar curvature must be finite");
  }
}

SolverParams SolverParams::from_beta(int m, double beta) { return SolverParams(m, 8.0 - 2.0 * beta); }

EllipticConstants derive_constants(const SolverParams& params) {
  const double m = params.m();
  const double beta = params.beta();
  const double two_m2 = 2.0 * m * m;
  const double s = std::hypot(std::sqrt(2.0) * m, beta);
  // s +- beta without cancellation: (s + beta)(s - beta) = 2 m^2.
  const double s_plus = beta >= 0.0 ? s + beta : two_m2 / (s - beta);
  const double s_minus = beta >= 0.0 ? two_m2 / (s + beta) : s - beta;

  EllipticConstants c{};
  c.k = std::sqrt(s_plus / (2.0 * s));
  c.k_prime = std::sqrt(s_minus / (2.0 * s));
  c.K = complete_elliptic_k(c.modulus());
  c.mu = std::sqrt(s);
  c.T = c.K / c.mu;
  c.f_max = std::sqrt(s_plus);
  return c;
}

std::string_view to_string(Generator g) {
  return g == Generator::closed_form ? "closed_form" : "numeric_ivp";
}

Generator generator_from_string(std::string_view s) {
  if (s == "closed_form") return Generator::closed_form;
  if (s == "numeric_ivp") return Generator::numeric_ivp;
  throw std::invalid_argument("unknown generator tag: " + std::string(s));
}

MetricProfile::MetricProfile(SolverParams params, EllipticConstants consts, double half_length,
                             std::vector<ProfileSample> grid, Generator generator, double tolerance)
    : params_(params),
      consts_(consts),
      half_length_(half_length),
      grid_(std::move(grid)),
      generator_(generator),
      tolerance_(tolerance) {}

std::vector<double> chebyshev_nodes(double half_length, std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("chebyshev_nodes: need at least two nodes");
  }
  std::vector<double> t(n);
  const double step = std::numbers::pi / static_cast<double>(n - 1);
  for (std::size_t j = 0; j < (n + 1) / 2; ++j) {
    t[j] = -half_length * std::cos(step * static_cast<double>(j));
  }
  for (std::size_t j = (n + 1) / 2; j < n; ++j) {
    t[j] = -t[n - 1 - j];
  }
  if (n % 2 == 1) {
    t[n / 2] = 0.0;
  }
  t.front() = -half_length;
  t.back() = half_length;
  return t;
}

MetricProfile solve_closed_form(const SolverParams& params, std::size_t grid_size) {
  const EllipticConstants c = derive_constants(params);
  const EllipticModulus mod = c.modulus();
  const double beta = params.beta();
  std::vector<ProfileSample> grid;
  grid.reserve(grid_size);
  for (double t : chebyshev_nodes(c.T, grid_size)) {
    const auto j = detail::jacobi_sncndn(c.mu * t, mod);
    const double f = c.f_max * j.cn;
    const double fp = -c.f_max * c.mu * j.sn * j.dn;
    grid.push_back({t, f, fp, f * (beta - f * f)});
  }
  return MetricProfile(params, c, c.T, std::move(grid), Generator::closed_form);
}

MetricProfile solve_numeric_ivp(const SolverParams& params, double tol, std::size_t grid_size) {
  if (!(tol >= kMinTol && tol <= kMaxTol)) {
    throw std::invalid_argument("numeric IVP tolerance must lie in [1e-13, 1e-6]");
  }
  const EllipticConstants c = derive_constants(params);
  const double t_right = locate_zero(params, c, tol, +1.0);
  const double t_left = locate_zero(params, c, tol, -1.0);
  const double half = 0.5 * (t_right + t_left);

  const std::vector<double> nodes = chebyshev_nodes(half, grid_size);
  std::vector<double> right;
  std::vector<double> left;
  for (double t : nodes) {
    (t >= 0.0 ? right : left).push_back(t);
  }
  std::reverse(left.begin(), left.end());
  const auto right_states = sample_along(params, c, tol, right);
  const auto left_states = sample_along(params, c, tol, left);

  const double beta = params.beta();
  std::vector<ProfileSample> grid;
  grid.reserve(grid_size);
  for (std::size_t i = left.size(); i-- > 0;) {
    const auto& y = left_states[i];
    grid.push_back({left[i], y[0], y[1], y[0] * (beta - y[0] * y[0])});
  }
  for (std::size_t i = 0; i < right.size(); ++i) {
    const auto& y = right_states[i];
    grid.push_back({right[i], y[0], y[1], y[0] * (beta - y[0] * y[0])});
  }
  return MetricProfile(params, c, half, std::move(grid), Generator::numeric_ivp, tol);
}

CurvatureState duffing_jet(const SolverParams& params, double t, double f, double fp) {
  const double beta = params.beta();
  const double fpp = f * (beta - f * f);
  const double lin = beta - 3.0 * f * f;
  const double fppp = lin * fp;
  const double fpppp = lin * fpp - 6.0 * f * fp * fp;
  return CurvatureState::from_jet(t, f, fp, fpp, fppp, fpppp, DuffingClosure{params.m(), beta});
}

CurvatureState jet(const MetricProfile& profile, double t) {
  const double half = profile.half_length();
  if (!(std::abs(t) <= half * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()))) {
    throw DomainError("jet: |t| exceeds the profile half-length T");
  }
  const SolverParams& params = profile.params();
  if (profile.generator() == Generator::closed_form) {
    const EllipticConstants& c = profile.consts();
    const auto j = detail::jacobi_sncndn(c.mu * t, c.modulus());
    return duffing_jet(params, t, c.f_max * j.cn, -c.f_max * c.mu * j.sn * j.dn);
  }

  // Numeric: continue the IVP from the nearest stored node.
  const auto& grid = profile.grid();
  auto it = std::lower_bound(grid.begin(), grid.end(), t,
                             [](const ProfileSample& s, double v) { return s.t < v; });
  if (it == grid.end() || (it != grid.begin() && std::abs((it - 1)->t - t) < std::abs(it->t - t))) {
    --it;
  }
  PhaseState y{it->f, it->fp};
  if (it->t != t) {
    const DuffingRhs rhs{params.beta()};
    const double dt0 = (t > it->t ? 1.0 : -1.0) * std::min(1e-3, std::abs(t - it->t));
    odeint::integrate_adaptive(make_stepper(profile.tolerance()), rhs, y, it->t, t, dt0);
  }
  return duffing_jet(params, t, y[0], y[1]);
}

double first_integral_residual(const SolverParams& params, double f, double fp) {
  const double beta = params.beta();
  const double m = params.m();
  const double f2 = f * f;
  return 2.0 * fp * fp + f2 * f2 - 2.0 * beta * f2 - 2.0 * m * m;
}

}  // namespace hcsc
