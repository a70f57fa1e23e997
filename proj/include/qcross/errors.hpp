#pragma once

#include <stdexcept>
#include <string>

namespace qcross {

// Parameter tuple or argument outside the documented domain.
class InvalidParameter : public std::invalid_argument {
 public:
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

// Arithmetic that is undefined in the quadratic field (mismatched radicands,
// division by zero).
class ArithmeticError : public std::domain_error {
 public:
  explicit ArithmeticError(const std::string& what) : std::domain_error(what) {}
};

// Requested computation is outside what the engine supports (e.g. a
// non-prime field size for explicit subspace enumeration).
class Unsupported : public std::runtime_error {
 public:
  explicit Unsupported(const std::string& what) : std::runtime_error(what) {}
};

// Dense matrix work would exceed the configured entry budget.
class SizeGuardExceeded : public std::runtime_error {
 public:
  SizeGuardExceeded(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

// The halving search for a feasible dual parameter reached its floor.
class ExhaustedSearch : public std::runtime_error {
 public:
  explicit ExhaustedSearch(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qcross
