#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>

#include "doctest.h"
#include "hcsc/errors.hpp"
#include "hcsc/special_fn.hpp"

using namespace hcsc;

namespace {

// K(k) from its defining integral, substituting x = sin(theta).
double k_by_quadrature(double k) {
  boost::math::quadrature::tanh_sinh<double> q;
  return q.integrate([k](double th) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(th) * std::sin(th)); }, 0.0,
                     std::numbers::pi / 2);
}

}  // namespace

TEST_SUITE("special_fn") {
  TEST_CASE("K at the documented moduli") {
    CHECK(complete_elliptic_k(EllipticModulus(0.0)) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    CHECK(std::abs(complete_elliptic_k(EllipticModulus(1 / std::numbers::sqrt2)) / 1.854074677301372 - 1) < 1e-14);
    CHECK(std::abs(complete_elliptic_k(EllipticModulus(0.5)) / 1.6857503548125961 - 1) < 1e-14);
  }

  TEST_CASE("K against Boost ellint_1 and tanh-sinh quadrature") {
    for (double k : {0.0, 0.01, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999999}) {
      const double K = complete_elliptic_k(EllipticModulus(k));
      CHECK(std::abs(K / boost::math::ellint_1(k) - 1) < 1e-14);
      CHECK(std::abs(K / k_by_quadrature(k) - 1) < 1e-12);
    }
  }

  TEST_CASE("complement keeps accuracy near k = 1") {
    const double kp = 1e-6;
    const double k = std::sqrt((1 - kp) * (1 + kp));
    const auto mod = EllipticModulus::with_complement(k, kp);
    // K = ln(4/k') + (k'^2/4)(ln(4/k') - 1) + O(k'^4)
    const double L = std::log(4 / kp);
    CHECK(complete_elliptic_k(mod) == doctest::Approx(L + kp * kp / 4 * (L - 1)).epsilon(1e-15));
    CHECK_THROWS_AS(EllipticModulus::with_complement(0.5, 0.5), DomainError);
  }

  TEST_CASE("modulus domain") {
    CHECK_THROWS_AS(EllipticModulus(1.0), DomainError);
    CHECK_THROWS_AS(EllipticModulus(-0.1), DomainError);
    CHECK_THROWS_AS(EllipticModulus(std::nan("")), DomainError);
    CHECK_THROWS_AS(jacobi_cn(std::numeric_limits<double>::infinity(), EllipticModulus(0.5)), DomainError);
  }

  TEST_CASE("cn examples") {
    CHECK(jacobi_cn(0.0, EllipticModulus(0.3)) == 1.0);
    CHECK(std::abs(jacobi_cn(1.0, EllipticModulus(0.0)) - 0.5403023058681398) < 1e-16);
    const EllipticModulus h(1 / std::numbers::sqrt2);
    CHECK(std::abs(jacobi_cn(complete_elliptic_k(h), h)) < 1e-13);
  }

  TEST_CASE("cn against Boost jacobi_cn on |u| <= 2K and beyond") {
    std::mt19937_64 rng(3);
    for (double k : {0.05, 0.5, 0.7071067811865476, 0.95, 0.9999}) {
      const EllipticModulus mod(k);
      const double K = complete_elliptic_k(mod);
      std::uniform_real_distribution<double> u(-2 * K, 2 * K);
      for (int i = 0; i < 200; ++i) {
        const double x = u(rng);
        CHECK(std::abs(jacobi_cn(x, mod) - boost::math::jacobi_cn(k, x)) < 1e-13);
      }
      for (double x : {3 * K, 4 * K + 0.2, -7.5 * K, 41.3 * K}) {
        CHECK(std::abs(jacobi_cn(x, mod) - boost::math::jacobi_cn(k, x)) < 1e-11);
      }
    }
  }

  TEST_CASE("sn, dn consistent with Boost") {
    const EllipticModulus mod(0.8);
    for (double u = -3.0; u <= 3.0; u += 0.25) {
      const auto t = detail::jacobi_sncndn(u, mod);
      CHECK(std::abs(t.sn - boost::math::jacobi_sn(0.8, u)) < 1e-13);
      CHECK(std::abs(t.dn - boost::math::jacobi_dn(0.8, u)) < 1e-13);
    }
  }

  TEST_CASE("cn symmetries") {
    const EllipticModulus mod(0.6);
    const double K = complete_elliptic_k(mod);
    for (double u : {0.1, 0.7, 1.3}) {
      CHECK(jacobi_cn(-u, mod) == doctest::Approx(jacobi_cn(u, mod)).epsilon(1e-15));
      CHECK(std::abs(jacobi_cn(2 * K - u, mod) + jacobi_cn(u, mod)) < 1e-14);
      CHECK(std::abs(jacobi_cn(u + 4 * K, mod) - jacobi_cn(u, mod)) < 1e-13);
    }
  }

  TEST_CASE("derivative of cn by central difference") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> kd(0.0, 0.99);
    for (int i = 0; i < 100; ++i) {
      const EllipticModulus mod(kd(rng));
      const double u = std::uniform_real_distribution<double>(0, complete_elliptic_k(mod))(rng);
      const double fd = (jacobi_cn(u + 1e-6, mod) - jacobi_cn(u - 1e-6, mod)) / 2e-6;
      const auto t = detail::jacobi_sncndn(u, mod);
      CHECK(std::abs(fd + t.sn * t.dn) < 1e-6);
    }
  }

  TEST_CASE("K is monotone") {
    double prev = 0;
    for (int i = 0; i < 1000; ++i) {
      const double K = complete_elliptic_k(EllipticModulus(0.999 * i / 999));
      REQUIRE(K > prev);
      prev = K;
    }
  }
}
