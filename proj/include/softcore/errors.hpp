#pragma once

#include <stdexcept>
#include <string>

namespace softcore {

// Argument outside the domain of a function (b a non-positive integer,
// r outside the core, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A series, quadrature or iteration failed to reach its tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An intermediate quantity (usually a Gamma factor) is not representable.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Inner and outer branches both vanish at the core edge, value and slope.
class MatchingDegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace softcore
