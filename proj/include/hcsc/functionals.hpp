#pragma once

#include <cstddef>
#include <functional>
#include <string_view>

#include "hcsc/csc_profile.hpp"
#include "hcsc/curvature_state.hpp"

namespace hcsc {

struct ClosedIntegrals {
  double T;
  double int_f;   // int_{-T}^{T} f dt
  double int_f3;  // int f^3 dt
  double int_f5;  // int f^5 dt
};

ClosedIntegrals closed_integrals(const SolverParams& params);

using Integrand = std::function<double(const CurvatureState&)>;

struct QuadratureOptions {
  std::size_t initial_panels = 64;
  std::size_t max_panels = 4096;
  double rel_tol = 1e-10;
  // Accepts agreement below this absolute level (integrands that vanish identically).
  double abs_tol = 1e-13;
};

// int_{-T}^{T} f(t) phi(t) dt by composite 16-point Gauss-Legendre on
// Chebyshev-spaced panels, doubling until successive results agree.
// Throws NonFiniteError if phi returns NaN/Inf.
double integrate_profile(const MetricProfile& profile, const Integrand& phi, const QuadratureOptions& opts = {});

// Integral of a U(2)-invariant function over Sigma_m: (2 pi^2 / m) int f phi dt.
double quadrature(const MetricProfile& profile, const Integrand& phi, const QuadratureOptions& opts = {});

double volume_closed(const SolverParams& params);

// 2 * 2^(1/4) pi R sqrt(Arcsin(k)/m); cross-checked against R sqrt(Vol).
double yamabe_value(const SolverParams& params);

// B_t(g_m(R)) = intercept + t * slope.
struct BtCoefficients {
  double intercept;  // int |W|^2 dVol
  double slope;      // int R^2 dVol
};

BtCoefficients bt_coefficients(const SolverParams& params);
double bt_value(const SolverParams& params, double t_coef);
// The same functional by quadrature of |W|^2 + t R^2.
double bt_quadrature(const MetricProfile& profile, double t_coef);

// int f (|W|^2/4 + R^2/24 - |tsRic|^2/2) dt, which equals 16 m (= 8 pi^2 chi / (2 pi^2 / m), chi = 4).
double cgb_check(const MetricProfile& profile);

// Smooth compactly supported perturbation a * exp(1 - 1/(1 - s^2)), s = (t - c)/w.
struct Bump {
  double center;
  double half_width;
  double amplitude;

  double value(double t) const;
  double d1(double t) const;
  double d2(double t) const;
};

struct WeylVariation {
  double derivative;  // central difference of F(f + eps b), F = (2 pi^2/m) int f |W|^2
  double b3_pairing;  // (2 pi^2/m) int b B3 dt
  double ratio;       // derivative / b3_pairing (0 when both vanish)
};

// Throws PreconditionError if the bump leaves (-T, T) or the perturbed profile
// is not strictly positive on the support.
WeylVariation weyl_first_variation(const MetricProfile& profile, const Bump& bump, double eps = 1e-5);

// |derivative - c * pairing| / |derivative|; 0 when both sides vanish.
double weyl_el_residual(const MetricProfile& profile, const Bump& bump, double c, double eps = 1e-5);

enum class Stability { unstable_R_gt_24, bound_inconclusive };

std::string_view to_string(Stability s);

struct EigenBounds {
  double fiber_lower;   // Cheeger lower bound for the fiber eigenvalue
  double fiber_upper;   // Hersch upper bound sqrt(2)/Arcsin(k)
  double total_upper;   // lambda_1 <= 8 for the total space
  Stability stability;
};

EigenBounds eigen_bounds(const SolverParams& params);

struct FunctionalReport {
  SolverParams params;
  ClosedIntegrals integrals;
  double int_f_quadrature;
  double int_f3_quadrature;
  double int_f5_quadrature;
  double volume;         // by quadrature
  double volume_closed;
  double yamabe;
  BtCoefficients bt;
  double weyl_restricted;  // int |W|^2 dVol by quadrature
  double cgb_integral;
  double eigen_lower;
  double eigen_upper;
  double total_eigen_upper;
  Stability stability;
};

// Evaluates everything above on one profile. Throws InconsistencyError if
// Yamabe's two routes disagree beyond 1e-10 relative.
FunctionalReport build_report(const MetricProfile& profile);

}  // namespace hcsc
