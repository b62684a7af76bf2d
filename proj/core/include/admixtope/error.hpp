#pragma once

#include <stdexcept>
#include <string>

namespace admixtope {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (shape, range, simplex membership).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The request is well-formed but outside what the implementation supports.
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// An enumeration, quadrature or rejection loop ran out of its budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Internal consistency check failed (e.g. Gibbs count tables drifted).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A nonnegative real that may be +infinity. Infinity is carried as a flag,
/// never as a sentinel value.
struct ExtendedReal {
  double value = 0.0;
  bool infinite = false;

  static ExtendedReal finite(double v) { return {v, false}; }
  static ExtendedReal infinity() { return {0.0, true}; }

  friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
  }
  friend bool operator<=(const ExtendedReal& a, const ExtendedReal& b) { return !(b < a); }
  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace admixtope
