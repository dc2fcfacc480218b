#pragma once

#include <stdexcept>
#include <string>

namespace hcsc {

// Argument outside the mathematical domain of an operation (k >= 1, |t| > T, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A rho-based formula was asked to divide by f at or below the floor.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integrator or event search failed to terminate as expected.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input state violates a documented precondition (off-curve jets, y0 <= 0, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two independent routes for the same quantity disagree beyond tolerance.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An integrand produced NaN or Inf.
class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hcsc
