#pragma once

#include "deconv/noise.hpp"

#include <complex>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace deconv {

//! A ground-truth target density with closed-form pdf and characteristic
//! function, exact first two moments, and an exact sampler.
struct TargetDensity {
  std::string name;
  std::function<double(double)> pdf;
  std::function<std::complex<double>(double)> cf;
  double mean = 0.0;
  double variance = 1.0;
  std::function<double(std::mt19937_64&)> sampler;
};

//! density #1: standard normal.
TargetDensity make_density_1();

//! density #2: chi-square with 3 degrees of freedom.
TargetDensity make_density_2();

//! density #3: 0.6 N(-2, 1) + 0.4 N(2, 0.8^2).
TargetDensity make_density_3();

//! Look up a built-in target by name ("normal" | "chisq3" | "mixture").
TargetDensity target_by_name(const std::string& name);

//! Noise-to-signal ratio in percent: 100 * Var[Z] / Var[Y].
//! Throws std::invalid_argument for degenerate targets (variance <= 0).
double nsr(const TargetDensity& target, const ErrorModel& noise);

//! n i.i.d. draws of X = Y + Z. Deterministic given the stream state.
std::vector<double> sample_convolved(const TargetDensity& target,
                                     const ErrorModel& noise, std::size_t n,
                                     std::mt19937_64& stream);

} // namespace deconv
