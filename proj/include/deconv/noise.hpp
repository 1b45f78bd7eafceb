#pragma once

#include <complex>
#include <functional>

namespace deconv {

//! A supersmooth error model: characteristic function phi_k with tail
//! behaviour |phi_k(t)| ~ C |t|^lambda0 exp(-|t|^lambda / mu) and
//! phi_k(t) != 0 everywhere.
struct ErrorModel {
  std::function<std::complex<double>(double)> cf;
  double C = 1.0;
  double lambda0 = 0.0;
  double lambda = 2.0; // > 1
  double mu = 1.0;     // > 0
  double sd = 1.0;     // noise standard deviation, data units
};

//! Gaussian N(0, sd^2) noise: cf(t) = exp(-sd^2 t^2 / 2),
//! C = 1, lambda0 = 0, lambda = 2, mu = 2 / sd^2.
//! Throws std::invalid_argument for sd <= 0.
ErrorModel make_gaussian_noise(double sd);

//! Guarded evaluation of 1/|phi_k(t)| for the Gaussian model,
//! i.e. exp(sd^2 t^2 / 2). Throws OverflowError (carrying the exponent)
//! instead of silently saturating when the exponent exceeds the
//! representable range.
double inverse_cf_magnitude(const ErrorModel& model, double t);

} // namespace deconv
