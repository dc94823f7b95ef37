#pragma once

#include <stdexcept>
#include <string>

namespace lupi {

/// Argument outside the mathematical domain of an operation (n < 3, index out of range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed input data: bad strategy files, out-of-range choices, unnormalized probabilities.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Request exceeds a configured computational budget (symbolic n cap, subset cap, oracle budget).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure could not make progress.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lupi
