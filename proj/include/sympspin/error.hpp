#pragma once

#include <stdexcept>
#include <string>

namespace sympspin {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operand shapes or bases do not match.
struct DimensionError : Error {
  using Error::Error;
};

// A precondition or a structural invariant is violated.
struct DomainError : Error {
  using Error::Error;
};

// A numerical procedure failed to reach the requested accuracy.
struct ConvergenceError : Error {
  using Error::Error;
};

// A computation would exceed its memory or size budget.
struct BudgetError : Error {
  using Error::Error;
};

// Malformed or inconsistent experiment configuration.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace sympspin
