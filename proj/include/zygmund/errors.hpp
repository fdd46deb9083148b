#pragma once

#include <stdexcept>
#include <string>

namespace zygmund {

/// Argument outside the domain of a function (e.g. psi evaluated at t < 1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid family parameters or method parameters.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An iterative numerical procedure did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent computations of the same quantity disagree.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zygmund
