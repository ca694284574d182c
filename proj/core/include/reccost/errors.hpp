#pragma once

#include <stdexcept>
#include <string>

namespace reccost {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the evaluable domain (x <= 0, query outside a table, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Result not representable in double precision.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Malformed family spec, negative amplitude, bad step and similar.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A hypothesis of a theorem-backed operation does not hold for the input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Iteration hit its budget before meeting the requested tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Raised by classify when the handle is not near any solution branch.
class ClassificationError : public Error {
 public:
  ClassificationError(const std::string& what, std::string nearest_branch,
                      double k, double residual, double threshold);

  const std::string& nearest_branch() const noexcept { return nearest_branch_; }
  double k() const noexcept { return k_; }
  double residual() const noexcept { return residual_; }
  double threshold() const noexcept { return threshold_; }

 private:
  std::string nearest_branch_;
  double k_;
  double residual_;
  double threshold_;
};

}  // namespace reccost
