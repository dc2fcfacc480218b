#pragma once

// Complete elliptic integral of the first kind and Jacobi cn, both through the
// arithmetic-geometric mean. Pure functions, no shared state.

namespace hcsc {

class EllipticModulus {
 public:
  // Throws DomainError unless 0 <= k < 1.
  explicit EllipticModulus(double k);

  // Builds the pair from independently computed k and k' (preserves accuracy
  // of k' when k is close to 1). Throws DomainError if k^2 + k'^2 is not 1
  // to within a few ulp.
  static EllipticModulus with_complement(double k, double k_prime);

  double k() const { return k_; }
  double k_prime() const { return k_prime_; }

 private:
  EllipticModulus(double k, double k_prime, int);
  double k_;
  double k_prime_;
};

// K(k) = int_0^1 dx / (sqrt(1-x^2) sqrt(1-k^2 x^2)) = pi / (2 AGM(1, k')).
double complete_elliptic_k(const EllipticModulus& mod);

// cn(u, k). Throws DomainError on non-finite u.
double jacobi_cn(double u, const EllipticModulus& mod);

namespace detail {

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

// sn, cn, dn together; used for the analytic derivative of the closed-form
// profile. Not part of the public surface.
JacobiTriple jacobi_sncndn(double u, const EllipticModulus& mod);

}  // namespace detail
}  // namespace hcsc
