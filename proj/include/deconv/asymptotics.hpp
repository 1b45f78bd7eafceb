#pragma once

#include "deconv/estimator.hpp"
#include "deconv/kernels.hpp"
#include "deconv/noise.hpp"

#include <cstddef>
#include <span>

namespace deconv {

//! Constants entering the deterministic normalization: kernel edge constants,
//! supersmooth noise constants, bandwidth and sample size.
struct AsymptoticSpec {
  double A = 1.0;
  double alpha = 0.0;
  double lambda0 = 0.0;
  double lambda = 2.0; // > 1
  double mu = 1.0;     // > 0
  double h = 0.0;      // > 0
  std::size_t n = 2;   // >= 2
};

AsymptoticSpec make_asymptotic_spec(const Kernel& kernel,
                                    const ErrorModel& noise, double h,
                                    std::size_t n);

//! Deterministic-normalization standard deviation of f_nh(x):
//!   A Gamma(alpha+1) h^{lambda(1+alpha)+lambda0-1} e^{1/(mu h^lambda)}
//!     (mu/lambda)^{1+alpha} / sqrt(2 n pi^2).
double theoretical_sd(const AsymptoticSpec& spec);
double theoretical_sd(const Kernel& kernel, const ErrorModel& noise, double h,
                      std::size_t n);

//! I(h) = int_0^1 phi_w(s) exp[s^lambda / (mu h^lambda)] ds.
//! Throws OverflowError when 1/(mu h^lambda) exceeds the exponent range.
double edge_integral(const Kernel& kernel, const ErrorModel& noise, double h);

//! theoretical_sd with the asymptotic edge approximation replaced by the
//! exact integral: I(h) h^{lambda0 - 1} / (pi sqrt(2 n)).
double corrected_sd(const Kernel& kernel, const ErrorModel& noise, double h,
                    std::size_t n);

//! I(h) divided by its asymptotic equivalent
//!   A Gamma(alpha+1) (mu h^lambda / lambda)^{1+alpha} e^{1/(mu h^lambda)};
//! tends to 1 as h -> 0. Equals corrected_sd / theoretical_sd.
double approximation_ratio(const Kernel& kernel, const ErrorModel& noise,
                           double h);

enum class ScaleVariant {
  plain,          // s_n^2 = (1/n) sum Z_nj^2
  sample_variance // s_n^2 = sample variance of the Z_nj
};

//! Self-normalized statistic sqrt(n) (f_nh(x) - centering) / s_n with
//! Z_nj = (1/h) w_h((x - X_j)/h). The centering (typically the smoothed
//! target f * K_h(x)) is supplied by the caller. Throws DegenerateScale
//! when s_n = 0.
double fan_statistic(const EstimatorConfig& config, std::span<const double> data,
                     double x, double centering, ScaleVariant variant);

//! Sample variance of cos((x - X_j)/h) over the data; the plug-in estimate
//! of Var[cos((x - X)/h)], which tends to 1/2 as h -> 0.
double cosine_variance_stat(std::span<const double> data, double x, double h);

} // namespace deconv
