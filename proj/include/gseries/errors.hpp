#pragma once

#include <stdexcept>
#include <string>

namespace gseries {

// Raised when an argument lies outside the region where a map is defined
// (g, g^-1, Lambert W, a family's parameter schema at evaluation time).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Iterative solvers that fail to reach their residual target.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed inputs: bad parameters, order mismatches, unknown identifiers.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Files that cannot be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gseries
