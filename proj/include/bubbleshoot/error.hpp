#pragma once

#include <stdexcept>
#include <string>

namespace bubbleshoot {

/// Argument outside the domain an evaluator supports.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exponent of the nonlinearity exceeds what 64-bit floating point can hold.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Step-size underflow, non-finite state, or a missing zero.
class IntegratorError : public std::runtime_error {
 public:
  IntegratorError(const std::string& what, double last_x)
      : std::runtime_error(what), last_x_(last_x) {}

  double last_x() const noexcept { return last_x_; }

 private:
  double last_x_;
};

/// Rejected problem configuration (e.g. non-positive linear coefficient).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bracket search or bisection on the shooting parameter failed.
class ShootingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bubbleshoot
