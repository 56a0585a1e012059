#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace wcop {

using cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

/// Malformed or out-of-domain input (bad JSON, degenerate map, |w| >= 1, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well formed but violates a mathematical precondition of the
/// requested operation (non-self-map symbol, branch violation, order policy).
class ConstraintViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A point of the extended complex plane. Infinity is an explicit state so
/// that no operation ever divides by zero.
struct ExtComplex {
  cplx value{0.0, 0.0};
  bool infinite = false;

  static ExtComplex finite(cplx z) { return {z, false}; }
  static ExtComplex infinity() { return {cplx{}, true}; }

  bool is_finite() const { return !infinite; }
};

}  // namespace wcop
