#pragma once

#include <array>
#include <optional>

namespace hcsc {

// Below this value of f the rho_i = f^(i)/f are not formed.
inline constexpr double kFFloor = 1e-8;

// Marks a jet as lying on a constant-scalar-curvature profile, so that
// f''/f = -f^2 + beta may replace the quotient where f vanishes.
struct DuffingClosure {
  int m;
  double beta;
};

struct CurvatureState {
  double t = 0.0;
  double f = 0.0;
  double fp = 0.0;
  double fpp = 0.0;
  double fppp = 0.0;
  double fpppp = 0.0;
  // rho[i-1] = f^(i) / f, populated only when f > kFFloor.
  std::optional<std::array<double, 4>> rho;
  std::optional<DuffingClosure> closure;

  static CurvatureState from_jet(double t, double f, double fp, double fpp, double fppp,
                                 double fpppp, std::optional<DuffingClosure> closure = std::nullopt) {
    CurvatureState s{t, f, fp, fpp, fppp, fpppp, std::nullopt, closure};
    if (f > kFFloor) {
      s.rho = std::array<double, 4>{fp / f, fpp / f, fppp / f, fpppp / f};
    }
    return s;
  }
};

}  // namespace hcsc
