#pragma once

#include <stdexcept>
#include <string>

namespace spinbath {

/// Raised when an argument violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure fails to meet its accuracy target.
/// `estimate` carries the best value reached, `error` the achieved error bound.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double estimate = 0.0, double error = 0.0)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}

  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

/// Raised when a request would exceed a hard work budget (enumeration, term count).
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spinbath
