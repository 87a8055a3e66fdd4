#pragma once

#include <stdexcept>
#include <string>

namespace holosim {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad dimensions, inconsistent configuration, violated
// preconditions that the caller could have checked.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Violated numerical contracts discovered during computation: hermiticity or
// unitarity drift, indeterminate parameter forms, failed residual checks.
class NumericsError : public Error {
 public:
  using Error::Error;
};

// Singular parameter combination at a specific evolution time.
class SingularityError : public NumericsError {
 public:
  SingularityError(const std::string& what, double time)
      : NumericsError(what + " (t = " + std::to_string(time) + ")"),
        time_(time) {}

  double time() const { return time_; }

 private:
  double time_;
};

}  // namespace holosim
