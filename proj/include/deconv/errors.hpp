#pragma once

#include <stdexcept>
#include <string>

namespace deconv {

//! Thrown when an exponential term exceeds the representable range
//! (typically exp(sigma^2 t^2 / 2) for small bandwidths).
class OverflowError : public std::runtime_error {
public:
  OverflowError(std::string what, double exponent)
    : std::runtime_error(std::move(what))
    , exponent_(exponent)
  {}

  //! The offending exponent, i.e. the argument that exp() could not take.
  double exponent() const { return exponent_; }

private:
  double exponent_;
};

//! Thrown by the self-normalized statistic when the scale s_n is zero.
class DegenerateScale : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace deconv
