#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "hcsc/csc_profile.hpp"
#include "hcsc/curvature_state.hpp"

namespace hcsc {

// Values of the trailing constant C of 4 y y'' - (y')^2 = 20 y - 16 x^2 + 32 x - C.
inline constexpr double kBachFlatC11 = 11.0;
inline constexpr double kBachFlatC16 = 16.0;

// x = f^2, y = (f')^2, yp = dy/dx.
struct BachFlatState {
  double x;
  double y;
  double yp;
  double C;
};

// 4 y y'' - (y')^2 - 20 y + 16 x^2 - 32 x + C. Equals 6 B4 on the mapped jet.
double residual(const BachFlatState& s, double ypp);

// y'' solved from the equation; singular where y = 0.
double bachflat_ypp(const BachFlatState& s);

struct BachFlatSample {
  double x;
  double y;
  double yp;
};

enum class Termination { reached_y_zero, reached_x_limit, singular_blowup, step_underflow };

std::string_view to_string(Termination t);

struct ShotOrigin {
  double x0;
  double y0;
  double yp0;
  double C;
  double x_max;
  double tol;
};

struct BachFlatTrajectory {
  std::vector<BachFlatSample> samples;  // strictly monotone in x
  ShotOrigin origin;
  Termination termination;
};

// Adaptive RK integration of y'' = ((y')^2 + 20 y - 16 x^2 + 32 x - C) / (4 y)
// from x0 toward x_max. Never steps across y = 0: a crossing is located by
// interpolation and ends the shot. Throws PreconditionError if y0 <= 0.
BachFlatTrajectory shoot(double x0, double y0, double yp0, double C, double x_max, double tol);

// Maps a point of an (x, y) trajectory to an f-jet on the branch f' > 0
// (f''' from y''; f'''' is not determined and is set to NaN).
CurvatureState jet_from_xy(double x, double y, double yp, double ypp);

// sup |6 B4| of the rho-form with constant C over profile nodes with f > 0.1.
double b4_residual_on_profile(const MetricProfile& profile, double C);

// sup |6 B4| over jets drawn from an arbitrary source, restricted to f > 0.1.
double b4_residual_on_jets(const std::vector<CurvatureState>& jets, double C);

// Curve y = a x^2 - 2 a x + c sampled at the given x values, with y' and y'' exact.
struct ParabolaFamily {
  double a;
  double c;
  double y(double x) const { return a * x * x - 2.0 * a * x + c; }
  double yp(double x) const { return 2.0 * a * x - 2.0 * a; }
  double ypp() const { return 2.0 * a; }
};

// Solves for the c that makes y = a x^2 - 2 a x + c satisfy the equation with
// constant C, using two trial values of c (the residual is affine in c).
// Throws InconsistencyError if the residual at that c still depends on x.
double forced_parabola_constant(double a, double C);

// y(0) = c must equal m^2 for an integer m >= 1 to match f'(+-T) = -+m.
std::optional<int> integer_boundary_slope(double y_at_zero);

struct ProfilePoint {
  double t;
  double f;
  double fp;
};

// Inverts x = f^2, y = (f')^2 along a monotone arc via t(f) = int df / sqrt(y(f^2)),
// using cubic Hermite interpolation of y between samples. t starts at 0.
// Throws PreconditionError if x is not strictly monotone or y <= 0 somewhere.
std::vector<ProfilePoint> trajectory_to_profile(const BachFlatTrajectory& traj);

struct GridShot {
  double y0;
  double yp0;
  Termination termination;
  double min_y;
  double x_at_termination;
};

// Shoots every (y0, yp0) pair from x0; no completeness claim. Runs on up to
// `threads` workers.
std::vector<GridShot> grid_search(double x0, const std::vector<double>& y0s, const std::vector<double>& yp0s,
                                  double C, double x_max, double tol, unsigned threads = 1);

}  // namespace hcsc
