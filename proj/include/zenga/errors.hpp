#ifndef ZENGA_ERRORS_HPP
#define ZENGA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zenga {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid parameters, malformed input files, broken invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A function handed to a numeric routine produced a non-finite value.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature ran out of subdivision depth.  The best available
// estimate and the accumulated error estimate of the unconverged panels
// are carried along so callers can decide whether to accept the value.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate,
                   double error_estimate)
      : Error(what),
        best_estimate(best_estimate),
        error_estimate(error_estimate) {}

  double best_estimate;
  double error_estimate;
};

// Monotone inversion could not establish a bracket.
class UnboundedSupportError : public Error {
 public:
  using Error::Error;
};

// A model lacks an optional capability required by the requested operation.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// Conditioning event has zero mass (empty tail subsample, zero-mass orthant,
// degenerate conditioning value).
class ConditioningError : public Error {
 public:
  using Error::Error;
};

// A ratio-based measure hit a zero or negative denominator.
class DegenerateDenominatorError : public Error {
 public:
  using Error::Error;
};

// The Zenga-to-J inversion used in curve reconstruction failed.
class InversionError : public Error {
 public:
  using Error::Error;
};

}  // namespace zenga

#endif  // ZENGA_ERRORS_HPP
