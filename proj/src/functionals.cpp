#include "hcsc/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "hcsc/curvature.hpp"
#include "hcsc/errors.hpp"

namespace hcsc {
namespace {

using std::numbers::pi;
using Gauss16 = boost::math::quadrature::gauss<double, 16>;

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kYamabeRouteTol = 1e-10;

double arcsin_k(const SolverParams& p) { return std::asin(derive_constants(p).k); }

double sphere_factor(const SolverParams& p) { return 2.0 * pi * pi / p.m(); }

struct PanelSum {
  double value = 0.0;
  double magnitude = 0.0;
};

// Composite Gauss-Legendre over the given panel boundaries.
template <class Fn>
PanelSum gauss_panels(const std::vector<double>& edges, Fn&& fn) {
  const auto& x = Gauss16::abscissa();
  const auto& w = Gauss16::weights();
  PanelSum sum;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double half = 0.5 * (edges[p + 1] - edges[p]);
    const double mid = 0.5 * (edges[p + 1] + edges[p]);
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (double sign : {-1.0, 1.0}) {
        const double v = fn(mid + sign * half * x[i]);
        if (!std::isfinite(v)) {
          throw NonFiniteError("quadrature: non-finite integrand value");
        }
        sum.value += half * w[i] * v;
        sum.magnitude += half * w[i] * std::abs(v);
      }
    }
  }
  return sum;
}

std::vector<double> uniform_edges(double a, double b, std::size_t panels) {
  std::vector<double> e(panels + 1);
  for (std::size_t i = 0; i <= panels; ++i) {
    e[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(panels);
  }
  e.back() = b;
  return e;
}

double weyl_sq_of(const CurvatureState& s) { return norm_invariants(s).w_sq; }

}  // namespace

ClosedIntegrals closed_integrals(const SolverParams& params) {
  const EllipticConstants c = derive_constants(params);
  const double m = params.m();
  const double beta = params.beta();
  const double a = kSqrt2 * std::asin(c.k);
  return {c.T, 2.0 * a, 2.0 * beta * a + 2.0 * m, (2.0 * m * m + 3.0 * beta * beta) * a + 3.0 * m * beta};
}

double integrate_profile(const MetricProfile& profile, const Integrand& phi, const QuadratureOptions& opts) {
  const double half = profile.half_length();
  auto fn = [&](double t) {
    const CurvatureState s = jet(profile, t);
    return s.f * phi(s);
  };
  std::size_t panels = opts.initial_panels;
  PanelSum prev = gauss_panels(chebyshev_nodes(half, panels + 1), fn);
  while (panels < opts.max_panels) {
    panels *= 2;
    const PanelSum next = gauss_panels(chebyshev_nodes(half, panels + 1), fn);
    const double scale = std::max(std::abs(next.value), 1e-6 * next.magnitude);
    if (std::abs(next.value - prev.value) <= std::max(opts.rel_tol * scale, opts.abs_tol)) {
      return next.value;
    }
    prev = next;
  }
  throw ConvergenceError("quadrature: panel doubling did not converge");
}

double quadrature(const MetricProfile& profile, const Integrand& phi, const QuadratureOptions& opts) {
  return sphere_factor(profile.params()) * integrate_profile(profile, phi, opts);
}

double volume_closed(const SolverParams& params) {
  return 4.0 * kSqrt2 * pi * pi * arcsin_k(params) / params.m();
}

double yamabe_value(const SolverParams& params) {
  const double R = params.scalar_curvature();
  const double closed = 2.0 * std::pow(2.0, 0.25) * pi * R * std::sqrt(arcsin_k(params) / params.m());
  const double via_volume = R * std::sqrt(volume_closed(params));
  if (std::abs(closed - via_volume) > kYamabeRouteTol * std::max(std::abs(closed), 1e-300)) {
    throw InconsistencyError("yamabe_value: closed form and R sqrt(Vol) disagree");
  }
  return closed;
}

BtCoefficients bt_coefficients(const SolverParams& params) {
  const double m = params.m();
  const double R = params.scalar_curvature();
  const double a = kSqrt2 * arcsin_k(params);
  const double s = sphere_factor(params);
  const double intercept = s * (72.0 * m * m + 59.0 / 3.0 * R * R - 272.0 * R + 960.0) * a - 4.0 * pi * pi * (19.0 * R - 120.0);
  const double slope = s * 2.0 * R * R * a;
  return {intercept, slope};
}

double bt_value(const SolverParams& params, double t_coef) {
  const BtCoefficients c = bt_coefficients(params);
  return c.intercept + t_coef * c.slope;
}

double bt_quadrature(const MetricProfile& profile, double t_coef) {
  return quadrature(profile, [t_coef](const CurvatureState& s) {
    const CurvatureDiagnostics d = norm_invariants(s);
    return d.w_sq + t_coef * d.r_sq;
  });
}

double cgb_check(const MetricProfile& profile) {
  return integrate_profile(profile, [](const CurvatureState& s) {
    const CurvatureDiagnostics d = norm_invariants(s);
    return 0.25 * d.w_sq + d.r_sq / 24.0 - 0.5 * d.tsric_sq;
  });
}

double Bump::value(double t) const {
  const double s = (t - center) / half_width;
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  return amplitude * std::exp(1.0 - 1.0 / q);
}

double Bump::d1(double t) const {
  const double s = (t - center) / half_width;
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  return value(t) * (-2.0 * s / (q * q)) / half_width;
}

double Bump::d2(double t) const {
  const double s = (t - center) / half_width;
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  const double q2 = q * q;
  const double bracket = 4.0 * s * s / (q2 * q2) - 2.0 / q2 - 8.0 * s * s / (q2 * q);
  return value(t) * bracket / (half_width * half_width);
}

WeylVariation weyl_first_variation(const MetricProfile& profile, const Bump& bump, double eps) {
  const double half = profile.half_length();
  const double lo = bump.center - bump.half_width;
  const double hi = bump.center + bump.half_width;
  if (!(bump.half_width > 0.0) || lo <= -half || hi >= half) {
    throw PreconditionError("weyl_first_variation: bump support must lie inside (-T, T)");
  }
  const SolverParams& params = profile.params();

  // Outside the support the perturbed jet equals the profile jet bit for bit,
  // so those panels cancel exactly in the central difference.
  std::vector<double> edges = uniform_edges(-half, lo, 32);
  const auto inner = uniform_edges(lo, hi, 64);
  edges.insert(edges.end(), inner.begin() + 1, inner.end());
  const auto outer = uniform_edges(hi, half, 32);
  edges.insert(edges.end(), outer.begin() + 1, outer.end());

  auto functional = [&](double e) {
    return gauss_panels(edges, [&](double t) {
             const CurvatureState base = jet(profile, t);
             const double b = bump.value(t);
             if (b == 0.0 && bump.d1(t) == 0.0) {
               return base.f * weyl_sq_of(base);
             }
             const double g = base.f + e * b;
             if (!(g > kFFloor)) {
               throw PreconditionError("weyl_first_variation: perturbed profile not positive");
             }
             const CurvatureState s =
                 CurvatureState::from_jet(t, g, base.fp + e * bump.d1(t), base.fpp + e * bump.d2(t), 0.0, 0.0);
             return g * weyl_sq_of(s);
           }).value;
  };

  const double factor = sphere_factor(params);
  const double derivative = factor * (functional(eps) - functional(-eps)) / (2.0 * eps);
  const double pairing = factor * gauss_panels(inner, [&](double t) {
                                    const CurvatureState s = jet(profile, t);
                                    return bump.value(t) * csc_bach_regular(params, s.f, s.fp).b3;
                                  }).value;
  const double ratio = (derivative == 0.0 && pairing == 0.0) ? 0.0 : derivative / pairing;
  return {derivative, pairing, ratio};
}

double weyl_el_residual(const MetricProfile& profile, const Bump& bump, double c, double eps) {
  const WeylVariation v = weyl_first_variation(profile, bump, eps);
  const double mismatch = std::abs(v.derivative - c * v.b3_pairing);
  if (mismatch == 0.0) return 0.0;
  return mismatch / std::abs(v.derivative);
}

std::string_view to_string(Stability s) {
  return s == Stability::unstable_R_gt_24 ? "unstable_R_gt_24" : "bound_inconclusive";
}

EigenBounds eigen_bounds(const SolverParams& params) {
  const EllipticConstants c = derive_constants(params);
  const double as = std::asin(c.k);
  const double lower = c.K * c.K / (2.0 * pi * pi * c.mu * c.mu * as * as);
  const double upper = kSqrt2 / as;
  const Stability st = params.scalar_curvature() > 24.0 ? Stability::unstable_R_gt_24 : Stability::bound_inconclusive;
  return {lower, upper, 8.0, st};
}

FunctionalReport build_report(const MetricProfile& profile) {
  const SolverParams& p = profile.params();
  FunctionalReport r{p, closed_integrals(p), 0, 0, 0, 0, 0, 0, {}, 0, 0, 0, 0, 0, Stability::bound_inconclusive};
  r.int_f_quadrature = integrate_profile(profile, [](const CurvatureState&) { return 1.0; });
  r.int_f3_quadrature = integrate_profile(profile, [](const CurvatureState& s) { return s.f * s.f; });
  r.int_f5_quadrature = integrate_profile(profile, [](const CurvatureState& s) { return s.f * s.f * s.f * s.f; });
  r.volume = sphere_factor(p) * r.int_f_quadrature;
  r.volume_closed = volume_closed(p);
  r.yamabe = yamabe_value(p);
  const double via_quadrature = p.scalar_curvature() * std::sqrt(r.volume);
  if (std::abs(r.yamabe - via_quadrature) > kYamabeRouteTol * std::max(std::abs(r.yamabe), 1e-300)) {
    throw InconsistencyError("build_report: Yamabe value disagrees with R sqrt(Vol) by quadrature");
  }
  r.bt = bt_coefficients(p);
  r.weyl_restricted = quadrature(profile, [](const CurvatureState& s) { return norm_invariants(s).w_sq; });
  r.cgb_integral = cgb_check(profile);
  const EigenBounds e = eigen_bounds(p);
  r.eigen_lower = e.fiber_lower;
  r.eigen_upper = e.fiber_upper;
  r.total_eigen_upper = e.total_upper;
  r.stability = e.stability;
  return r;
}

}  // namespace hcsc
