#pragma once

#include <stdexcept>
#include <string>

namespace dissgeo {

/// Invalid input: bad dimensions, out-of-range parameters, violated preconditions.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation produced a non-finite or out-of-tolerance result.
/// `value()` carries the offending quantity (a time, a residual, ...).
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double value)
      : std::runtime_error(what), value_(value) {}
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Sampling is too coarse to resolve a phase unambiguously.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dissgeo
