#include "deconv/noise.hpp"

#include "deconv/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace deconv {

namespace {
// exp() overflows past this for doubles.
constexpr double kMaxExponent = 709.0;
} // namespace

ErrorModel make_gaussian_noise(double sd)
{
  if (!(sd > 0.0))
    throw std::invalid_argument("gaussian noise requires sd > 0");
  ErrorModel m;
  m.cf = [sd](double t) {
    return std::complex<double>(std::exp(-0.5 * sd * sd * t * t), 0.0);
  };
  m.C = 1.0;
  m.lambda0 = 0.0;
  m.lambda = 2.0;
  m.mu = 2.0 / (sd * sd);
  m.sd = sd;
  return m;
}

double inverse_cf_magnitude(const ErrorModel& model, double t)
{
  const double mag = std::abs(model.cf(t));
  if (mag >= 1e-300) {
    const double exponent = -std::log(mag);
    if (exponent > kMaxExponent)
      throw OverflowError("1/phi_k overflows", exponent);
    return 1.0 / mag;
  }
  // cf underflowed; reconstruct the exponent from the Condition-2 tail.
  const double at = std::abs(t);
  const double exponent = std::pow(at, model.lambda) / model.mu -
                          model.lambda0 * std::log(at) - std::log(model.C);
  throw OverflowError("1/phi_k overflows", exponent);
}

} // namespace deconv
