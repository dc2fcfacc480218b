#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>

#include "hcsc/curvature_state.hpp"

namespace hcsc {

class SolverParams;

using Vec4 = std::array<double, 4>;

struct CurvatureDiagnostics {
  double R;
  double Rp;
  double Rpp;
  Vec4 ric;
  double ric_sq;
  double tsric_sq;
  double r_sq;   // R^2
  double rm_sq;  // |Rm|^2, full tensor norm
  double w_sq;   // |W|^2, full tensor norm
};

enum class BachRoute { derdzinski, closed_R, closed_rho, csc_regular };

std::string_view to_string(BachRoute route);

struct BachDiagonal {
  double b1;
  double b2;
  double b3;
  double b4;
  BachRoute route;
  std::optional<double> rho_constant;

  Vec4 components() const { return {b1, b2, b3, b4}; }
  double trace() const { return b1 + b2 + b3 + b4; }
  double max_abs() const;
};

// Trailing constant of the rho-form Bach expressions. 16 is what the Derdzinski
// assembly and the R-form reduce to; C shifts the result by ((16-C)/6)(1,1,-1,-1).
inline constexpr double kBachConstant11 = 11.0;
inline constexpr double kBachConstant16 = 16.0;

// R = -2 f''/f - 2 f^2 + 8.
double scalar_curvature(const CurvatureState& s);

// (Ric1, Ric2, Ric3, Ric4) = (-2f^2 + 4, -2f^2 + 4, -f''/f + 2f^2, -f''/f).
Vec4 ricci_diagonal(const CurvatureState& s);

// All squared-norm invariants plus R', R''. |W|^2 is computed twice (closed
// expression and orthogonal decomposition); throws InconsistencyError if the
// routes disagree beyond 1e-11 relative.
CurvatureDiagnostics norm_invariants(const CurvatureState& s);

struct RadialHessian {
  Vec4 hess;
  double laplacian;  // -trace Hess
};

// Hessian and Laplacian of a function phi(t) with the given derivatives.
RadialHessian radial_hessian(const CurvatureState& s, double phi_p, double phi_pp);

enum class TraceForm {
  minus_f4,   // f^2 rho2 - f^4 + 4 f^2 in the (1,1) divergence trace
  minus_4f4,  // f^2 rho2 - 4 f^4 + 4 f^2, from a direct frame computation
};

// (lap Ric_11, lap Ric_33, lap Ric_44, div Ric_11, div Ric_33, div Ric_44), where
// lap = nabla^p nabla_p and div A_ii = nabla^p nabla_i Ric_{pi}.
std::array<double, 6> ricci_laplacian_traces(const CurvatureState& s,
                                             TraceForm form = TraceForm::minus_f4);

// Bach tensor assembled term by term from the Derdzinski formula.
BachDiagonal bach_derdzinski(const CurvatureState& s);

// Closed expression in R, R', R'', f, f'.
BachDiagonal bach_closed_scalar(const CurvatureState& s);

// rho-form with the given trailing constant.
BachDiagonal bach_closed_rho(const CurvatureState& s, double constant = kBachConstant11);

// 6 B4 of the rho-form alone; needs only rho1..rho3.
double bach4_rho_scaled(const CurvatureState& s, double constant);

// Bach diagonal on a constant-scalar-curvature profile as polynomials in f, f'.
// Valid at f = 0. Throws PreconditionError if (f, f') is off the first-integral
// curve by more than 1e-8.
BachDiagonal csc_bach_regular(const SolverParams& params, double f, double fp);

// Alternative expansions that differ from the defining identities; kept to
// measure the difference.
namespace variants {
// |tsRic|^2 expanded with +24 f^2 (identity gives -24 f^2).
double tsric_sq_plus24(const CurvatureState& s);
// R^2 expanded with a bare 4^4 in place of 4 f^4.
double scalar_sq_four_pow_four(const CurvatureState& s);
}  // namespace variants

}  // namespace hcsc
