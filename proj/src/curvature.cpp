#include "hcsc/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "hcsc/csc_profile.hpp"
#include "hcsc/errors.hpp"

namespace hcsc {
namespace {

constexpr double kWeylRouteTol = 1e-11;
constexpr double kOnCurveTol = 1e-8;

const std::array<double, 4>& require_rho(const CurvatureState& s, const char* what) {
  if (!s.rho) {
    throw SingularityError(std::string(what) + ": f <= f_floor, rho quotients undefined");
  }
  return *s.rho;
}

// rho2 = f''/f and its first two t-derivatives. Falls back on the Duffing
// closure f''/f = -f^2 + beta when f is below the floor.
struct Rho2Jet {
  double r2;
  double r2p;
  double r2pp;
};

Rho2Jet rho2_jet(const CurvatureState& s, const char* what) {
  if (s.rho) {
    const auto& r = *s.rho;
    return {r[1], r[2] - r[0] * r[1], r[3] - 2.0 * r[0] * r[2] - r[1] * r[1] + 2.0 * r[0] * r[0] * r[1]};
  }
  if (s.closure) {
    return {s.closure->beta - s.f * s.f, -2.0 * s.f * s.fp, -2.0 * s.fp * s.fp - 2.0 * s.f * s.fpp};
  }
  throw SingularityError(std::string(what) + ": f <= f_floor and no ODE closure supplied");
}

double scalar_from(double r2, double f) { return -2.0 * r2 - 2.0 * f * f + 8.0; }

}  // namespace

std::string_view to_string(BachRoute route) {
  switch (route) {
    case BachRoute::derdzinski: return "derdzinski";
    case BachRoute::closed_R: return "closed_R";
    case BachRoute::closed_rho: return "closed_rho";
    case BachRoute::csc_regular: return "csc_regular";
  }
  return "unknown";
}

double BachDiagonal::max_abs() const {
  return std::max({std::abs(b1), std::abs(b2), std::abs(b3), std::abs(b4)});
}

double scalar_curvature(const CurvatureState& s) {
  return scalar_from(rho2_jet(s, "scalar_curvature").r2, s.f);
}

Vec4 ricci_diagonal(const CurvatureState& s) {
  const double r2 = rho2_jet(s, "ricci_diagonal").r2;
  const double f2 = s.f * s.f;
  return {-2.0 * f2 + 4.0, -2.0 * f2 + 4.0, -r2 + 2.0 * f2, -r2};
}

CurvatureDiagnostics norm_invariants(const CurvatureState& s) {
  const Rho2Jet q = rho2_jet(s, "norm_invariants");
  const double f = s.f;
  const double f2 = f * f;
  const double f4 = f2 * f2;
  const double fp2 = s.fp * s.fp;

  CurvatureDiagnostics d{};
  d.R = scalar_from(q.r2, f);
  d.Rp = -2.0 * q.r2p - 4.0 * f * s.fp;
  d.Rpp = -2.0 * q.r2pp - 4.0 * fp2 - 4.0 * f * s.fpp;
  d.ric = {-2.0 * f2 + 4.0, -2.0 * f2 + 4.0, -q.r2 + 2.0 * f2, -q.r2};
  d.ric_sq = 0.0;
  for (double r : d.ric) d.ric_sq += r * r;
  d.r_sq = d.R * d.R;
  d.tsric_sq = d.ric_sq - 0.25 * d.r_sq;
  d.rm_sq = 4.0 * q.r2 * q.r2 + 48.0 * fp2 + 44.0 * f4 - 96.0 * f2 + 64.0;

  const double w_closed = (d.r_sq - 12.0 * f2 * d.R + 144.0 * fp2 + 36.0 * f4) / 3.0;
  const double w_decomposed = d.rm_sq - 2.0 * d.tsric_sq - d.r_sq / 6.0;
  const double scale = std::max({1.0, d.rm_sq, d.r_sq, 144.0 * fp2, 36.0 * f4});
  if (std::abs(w_closed - w_decomposed) > kWeylRouteTol * scale) {
    throw InconsistencyError("norm_invariants: |W|^2 routes disagree");
  }
  d.w_sq = w_closed;
  return d;
}

RadialHessian radial_hessian(const CurvatureState& s, double phi_p, double phi_pp) {
  const double r1 = require_rho(s, "radial_hessian")[0];
  RadialHessian h{{0.0, 0.0, r1 * phi_p, phi_pp}, -phi_pp - r1 * phi_p};
  return h;
}

std::array<double, 6> ricci_laplacian_traces(const CurvatureState& s, TraceForm form) {
  const auto& r = require_rho(s, "ricci_laplacian_traces");
  const Rho2Jet q = rho2_jet(s, "ricci_laplacian_traces");
  const double r1 = r[0];
  const double r2 = r[1];
  const double f2 = s.f * s.f;
  const double f4 = f2 * f2;
  const double f2r11 = f2 * r1 * r1;
  const double div11_f4 = form == TraceForm::minus_f4 ? -1.0 : -4.0;
  return {
      -6.0 * f2 * r2 - 8.0 * f2r11 + 8.0 * f4 - 8.0 * f2,
      -q.r2pp - r1 * q.r2p + 8.0 * f2 * r2 + 4.0 * f2r11 - 16.0 * f4 + 16.0 * f2,
      -q.r2pp - r1 * q.r2p + 4.0 * f2r11,
      f2 * r2 + div11_f4 * f4 + 4.0 * f2,
      -r1 * q.r2p - 4.0 * f2 * r2 - 2.0 * f2r11 + 8.0 * f4 - 8.0 * f2,
      -q.r2pp - 2.0 * f2r11,
  };
}

BachDiagonal bach_derdzinski(const CurvatureState& s) {
  const auto tr = ricci_laplacian_traces(s, TraceForm::minus_4f4);
  const CurvatureDiagnostics d = norm_invariants(s);
  const RadialHessian h = radial_hessian(s, d.Rp, d.Rpp);
  const Vec4 lap{tr[0], tr[0], tr[1], tr[2]};
  const Vec4 div{tr[3], tr[3], tr[4], tr[5]};
  const double iso = -h.laplacian / 12.0 + (3.0 * d.ric_sq - d.r_sq) / 12.0;
  Vec4 b{};
  for (int i = 0; i < 4; ++i) {
    b[i] = div[i] - 0.5 * lap[i] - h.hess[i] / 3.0 + d.R * d.ric[i] / 3.0 - d.ric[i] * d.ric[i] + iso;
  }
  return {b[0], b[0], b[2], b[3], BachRoute::derdzinski, std::nullopt};
}

BachDiagonal bach_closed_scalar(const CurvatureState& s) {
  const double r1 = require_rho(s, "bach_closed_scalar")[0];
  const CurvatureDiagnostics d = norm_invariants(s);
  const double R = d.R;
  const double R2 = d.r_sq;
  const double f2 = s.f * s.f;
  const double f4 = f2 * f2;
  const double fp2 = s.fp * s.fp;
  const double b1 = (2.0 * d.Rpp + 2.0 * r1 * d.Rp + R2 - 40.0 * f2 * R - 16.0 * R + 96.0 * fp2 - 276.0 * f4 +
                     576.0 * f2) / 24.0;
  const double b3 =
      (-4.0 * d.Rpp - R2 + 84.0 * f2 * R + 16.0 * R - 96.0 * fp2 + 492.0 * f4 - 1056.0 * f2) / 24.0;
  const double b4 =
      (-4.0 * r1 * d.Rp - R2 - 4.0 * f2 * R + 16.0 * R - 96.0 * fp2 + 60.0 * f4 - 96.0 * f2) / 24.0;
  return {b1, b1, b3, b4, BachRoute::closed_R, std::nullopt};
}

BachDiagonal bach_closed_rho(const CurvatureState& s, double constant) {
  const auto& r = require_rho(s, "bach_closed_rho");
  const double r1 = r[0], r2 = r[1], r3 = r[2], r4 = r[3];
  const double f2 = s.f * s.f;
  const double f4 = f2 * f2;
  const double r11 = r1 * r1;
  const double b1 = (-r4 + r1 * r3 + 2.0 * r2 * r2 - r11 * r2 + 20.0 * f2 * r2 + 20.0 * f2 * r11 - 48.0 * f4 +
                     64.0 * f2 - constant) / 6.0;
  const double b3 = (2.0 * r4 - 4.0 * r1 * r3 - 3.0 * r2 * r2 + 4.0 * r11 * r2 - 40.0 * f2 * r2 -
                     20.0 * f2 * r11 + 80.0 * f4 - 96.0 * f2 + constant) / 6.0;
  return {b1, b1, b3, bach4_rho_scaled(s, constant) / 6.0, BachRoute::closed_rho, constant};
}

double bach4_rho_scaled(const CurvatureState& s, double constant) {
  const auto& r = require_rho(s, "bach4_rho_scaled");
  const double r1 = r[0], r2 = r[1], r3 = r[2];
  const double f2 = s.f * s.f;
  return 2.0 * r1 * r3 - r2 * r2 - 2.0 * r1 * r1 * r2 - 20.0 * f2 * r1 * r1 + 16.0 * f2 * f2 - 32.0 * f2 +
         constant;
}

BachDiagonal csc_bach_regular(const SolverParams& params, double f, double fp) {
  if (std::abs(first_integral_residual(params, f, fp)) > kOnCurveTol) {
    throw PreconditionError("csc_bach_regular: (f, f') is off the first-integral curve");
  }
  // With R constant, R' = R'' = 0 and every rho combination collapses.
  const double R = params.scalar_curvature();
  const double R2 = R * R;
  const double f2 = f * f;
  const double f4 = f2 * f2;
  const double fp2 = fp * fp;
  const double b1 = (R2 - 40.0 * f2 * R - 16.0 * R + 96.0 * fp2 - 276.0 * f4 + 576.0 * f2) / 24.0;
  const double b3 = (-R2 + 84.0 * f2 * R + 16.0 * R - 96.0 * fp2 + 492.0 * f4 - 1056.0 * f2) / 24.0;
  const double b4 = (-R2 - 4.0 * f2 * R + 16.0 * R - 96.0 * fp2 + 60.0 * f4 - 96.0 * f2) / 24.0;
  return {b1, b1, b3, b4, BachRoute::csc_regular, std::nullopt};
}

namespace variants {

double tsric_sq_plus24(const CurvatureState& s) {
  const double r2 = rho2_jet(s, "tsric_sq_plus24").r2;
  const double f2 = s.f * s.f;
  return r2 * r2 + 8.0 * r2 - 6.0 * s.f * s.fpp + 11.0 * f2 * f2 + 24.0 * f2 + 16.0;
}

double scalar_sq_four_pow_four(const CurvatureState& s) {
  const double r2 = rho2_jet(s, "scalar_sq_four_pow_four").r2;
  const double f2 = s.f * s.f;
  return 4.0 * r2 * r2 - 32.0 * r2 + 8.0 * s.f * s.fpp + 256.0 - 32.0 * f2 + 64.0;
}

}  // namespace variants
}  // namespace hcsc
