#include "hcsc/special_fn.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "hcsc/errors.hpp"

namespace hcsc {
namespace {

constexpr int kMaxAgmIterations = 40;
constexpr double kAgmRelTol = 1e-16;

bool agm_converged(double a, double b) { return std::abs(a - b) < kAgmRelTol * a; }

}  // namespace

EllipticModulus::EllipticModulus(double k) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw DomainError("elliptic modulus must satisfy 0 <= k < 1");
  }
  k_ = k;
  k_prime_ = std::sqrt((1.0 - k) * (1.0 + k));
}

EllipticModulus::EllipticModulus(double k, double k_prime, int) : k_(k), k_prime_(k_prime) {}

EllipticModulus EllipticModulus::with_complement(double k, double k_prime) {
  if (!(k >= 0.0 && k < 1.0) || !(k_prime > 0.0 && k_prime <= 1.0)) {
    throw DomainError("elliptic modulus must satisfy 0 <= k < 1, 0 < k' <= 1");
  }
  const double defect = k * k + k_prime * k_prime - 1.0;
  if (std::abs(defect) > 4.0 * std::numeric_limits<double>::epsilon()) {
    throw DomainError("k^2 + k'^2 differs from 1");
  }
  return EllipticModulus(k, k_prime, 0);
}

double complete_elliptic_k(const EllipticModulus& mod) {
  double a = 1.0;
  double b = mod.k_prime();
  for (int n = 0; n < kMaxAgmIterations && !agm_converged(a, b); ++n) {
    const double next_a = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next_a;
  }
  return std::numbers::pi / (a + b);
}

namespace detail {

JacobiTriple jacobi_sncndn(double u, const EllipticModulus& mod) {
  if (!std::isfinite(u)) {
    throw DomainError("jacobi_cn: argument must be finite");
  }
  const double k = mod.k();
  if (k == 0.0) {
    return {std::sin(u), std::cos(u), 1.0};
  }

  // Fold into [0, K]: cn is even with period 4K, cn(2K - u) = -cn(u),
  // sn is odd with sn(2K - u) = sn(u), dn is even about 0 and K.
  const double quarter = complete_elliptic_k(mod);
  double sn_sign = u < 0.0 ? -1.0 : 1.0;
  double cn_sign = 1.0;
  double r = std::fmod(std::abs(u), 4.0 * quarter);
  if (r > 2.0 * quarter) {
    r = 4.0 * quarter - r;
    sn_sign = -sn_sign;
  }
  if (r > quarter) {
    r = 2.0 * quarter - r;
    cn_sign = -1.0;
  }

  // Descending Landen / AGM sequence.
  std::array<double, kMaxAgmIterations + 1> a{};
  std::array<double, kMaxAgmIterations + 1> c{};
  a[0] = 1.0;
  c[0] = k;
  double b = mod.k_prime();
  int n = 0;
  while (n < kMaxAgmIterations && std::abs(c[n]) >= kAgmRelTol * a[n]) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * r, n);
  for (int j = n; j > 0; --j) {
    phi = 0.5 * (phi + std::asin(c[j] / a[j] * std::sin(phi)));
  }
  const double sn = std::sin(phi);
  const double ks = k * sn;
  return {sn_sign * sn, cn_sign * std::cos(phi), std::sqrt((1.0 - ks) * (1.0 + ks))};
}

}  // namespace detail

double jacobi_cn(double u, const EllipticModulus& mod) { return detail::jacobi_sncndn(u, mod).cn; }

}  // namespace hcsc
