#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "hcsc/curvature_state.hpp"
#include "hcsc/special_fn.hpp"

namespace hcsc {

// Selects one metric g_m(R). beta = -(R - 8)/2 is always derived, never stored.
class SolverParams {
 public:
  // Throws std::invalid_argument unless m >= 1 and R is finite.
  SolverParams(int m, double scalar_curvature);
  static SolverParams from_beta(int m, double beta);

  int m() const { return m_; }
  double scalar_curvature() const { return scalar_curvature_; }
  double beta() const { return 0.5 * (8.0 - scalar_curvature_); }

 private:
  int m_;
  double scalar_curvature_;
};

struct EllipticConstants {
  double k;        // modulus
  double k_prime;  // complementary modulus sqrt(1 - k^2)
  double K;        // quarter period K(k)
  double T;        // half-length of the orbit interval
  double f_max;    // f(0)
  double mu;       // (2m^2 + beta^2)^(1/4)

  EllipticModulus modulus() const { return EllipticModulus::with_complement(k, k_prime); }
};

EllipticConstants derive_constants(const SolverParams& params);

enum class Generator { closed_form, numeric_ivp };

std::string_view to_string(Generator g);
Generator generator_from_string(std::string_view s);

struct ProfileSample {
  double t;
  double f;
  double fp;
  double fpp;
};

inline constexpr std::size_t kDefaultGridSize = 512;

// Immutable solved profile on [-T, T]. For numeric profiles T is the detected
// zero of f, which may differ from consts.T by the integration tolerance.
class MetricProfile {
 public:
  MetricProfile(SolverParams params, EllipticConstants consts, double half_length,
                std::vector<ProfileSample> grid, Generator generator, double tolerance = 0.0);

  const SolverParams& params() const { return params_; }
  const EllipticConstants& consts() const { return consts_; }
  // T used by this profile's grid (closed form: consts.T; numeric: detected zero).
  double half_length() const { return half_length_; }
  const std::vector<ProfileSample>& grid() const { return grid_; }
  Generator generator() const { return generator_; }
  double tolerance() const { return tolerance_; }

 private:
  SolverParams params_;
  EllipticConstants consts_;
  double half_length_;
  std::vector<ProfileSample> grid_;
  Generator generator_;
  double tolerance_;
};

// Chebyshev-Lobatto nodes -T cos(j pi / (n-1)), exactly mirror-symmetric.
std::vector<double> chebyshev_nodes(double half_length, std::size_t n);

// f(t) = f_max cn(mu t, k).
MetricProfile solve_closed_form(const SolverParams& params, std::size_t grid_size = kDefaultGridSize);

// Integrates f'' = -f^3 + beta f from f(0) = f_max, f'(0) = 0 outward in both
// directions to the first zero of f. tol must lie in [1e-13, 1e-6].
// Throws ConvergenceError if no zero is bracketed by 4 T_predicted.
MetricProfile solve_numeric_ivp(const SolverParams& params, double tol,
                                std::size_t grid_size = kDefaultGridSize);

// Full 5-jet at t. f, f' from the generator, higher derivatives from the ODE.
// Throws DomainError if |t| > T.
CurvatureState jet(const MetricProfile& profile, double t);

// Same closure applied to an arbitrary (f, f') point on the params' phase curve.
CurvatureState duffing_jet(const SolverParams& params, double t, double f, double fp);

// 2 (f')^2 + f^4 - 2 beta f^2 - 2 m^2.
double first_integral_residual(const SolverParams& params, double f, double fp);

}  // namespace hcsc
