#include "deconv/asymptotics.hpp"

#include "deconv/errors.hpp"
#include "deconv/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace deconv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxExponent = 709.0;

void check_spec(const AsymptoticSpec& spec)
{
  if (!(spec.h > 0.0)) throw std::invalid_argument("h must be positive");
  if (spec.n < 2) throw std::invalid_argument("n must be >= 2");
  if (!(spec.lambda > 1.0)) throw std::invalid_argument("lambda must be > 1");
  if (!(spec.mu > 0.0)) throw std::invalid_argument("mu must be positive");
}

} // namespace

AsymptoticSpec make_asymptotic_spec(const Kernel& kernel,
                                    const ErrorModel& noise, double h,
                                    std::size_t n)
{
  AsymptoticSpec spec;
  spec.A = kernel.edge_constant_A;
  spec.alpha = kernel.edge_exponent_alpha;
  spec.lambda0 = noise.lambda0;
  spec.lambda = noise.lambda;
  spec.mu = noise.mu;
  spec.h = h;
  spec.n = n;
  return spec;
}

double theoretical_sd(const AsymptoticSpec& spec)
{
  check_spec(spec);
  // The rate exponent lambda(1+alpha)+lambda0-1 comes from the deterministic
  // CLT; it is the one that matches the published tables.
  const double rate_exp =
    spec.lambda * (1.0 + spec.alpha) + spec.lambda0 - 1.0;
  const double hl = std::pow(spec.h, spec.lambda);
  return spec.A * std::tgamma(spec.alpha + 1.0) * std::pow(spec.h, rate_exp) *
         std::exp(1.0 / (spec.mu * hl)) *
         std::pow(spec.mu / spec.lambda, 1.0 + spec.alpha) /
         std::sqrt(2.0 * static_cast<double>(spec.n) * kPi * kPi);
}

double theoretical_sd(const Kernel& kernel, const ErrorModel& noise, double h,
                      std::size_t n)
{
  return theoretical_sd(make_asymptotic_spec(kernel, noise, h, n));
}

double edge_integral(const Kernel& kernel, const ErrorModel& noise, double h)
{
  if (!(h > 0.0)) throw std::invalid_argument("h must be positive");
  const double scale = 1.0 / (noise.mu * std::pow(h, noise.lambda));
  if (scale > kMaxExponent)
    throw OverflowError("edge_integral: exp(1/(mu h^lambda)) overflows", scale);
  const auto& phi_w = kernel.fourier_transform;
  const double lambda = noise.lambda;
  return integrate(
    [&](double s) { return phi_w(s) * std::exp(std::pow(s, lambda) * scale); },
    0.0, 1.0);
}

double corrected_sd(const Kernel& kernel, const ErrorModel& noise, double h,
                    std::size_t n)
{
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  return edge_integral(kernel, noise, h) * std::pow(h, noise.lambda0 - 1.0) /
         (kPi * std::sqrt(2.0 * static_cast<double>(n)));
}

double approximation_ratio(const Kernel& kernel, const ErrorModel& noise,
                           double h)
{
  const double I = edge_integral(kernel, noise, h);
  const double hl = std::pow(h, noise.lambda);
  const double asymptotic =
    kernel.edge_constant_A * std::tgamma(kernel.edge_exponent_alpha + 1.0) *
    std::pow(noise.mu * hl / noise.lambda, 1.0 + kernel.edge_exponent_alpha) *
    std::exp(1.0 / (noise.mu * hl));
  return I / asymptotic;
}

double fan_statistic(const EstimatorConfig& config, std::span<const double> data,
                     double x, double centering, ScaleVariant variant)
{
  const std::size_t n = data.size();
  if (n < 2)
    throw std::invalid_argument("fan_statistic: need at least 2 observations");
  const double h = config.bandwidth;

  std::vector<double> z(n);
  for (std::size_t j = 0; j < n; ++j)
    z[j] = smoothed_kernel(config, (x - data[j]) / h) / h;

  double mean = 0.0;
  for (double v : z) mean += v;
  mean /= static_cast<double>(n);

  double s2 = 0.0;
  if (variant == ScaleVariant::plain) {
    for (double v : z) s2 += v * v;
    s2 /= static_cast<double>(n);
  } else {
    for (double v : z) s2 += (v - mean) * (v - mean);
    s2 /= static_cast<double>(n - 1);
  }
  if (s2 <= 0.0)
    throw DegenerateScale("fan_statistic: s_n = 0 (all Z_nj equal)");
  return std::sqrt(static_cast<double>(n)) * (mean - centering) /
         std::sqrt(s2);
}

double cosine_variance_stat(std::span<const double> data, double x, double h)
{
  const std::size_t n = data.size();
  if (n == 0)
    throw std::invalid_argument("cosine_variance_stat: data must be nonempty");
  if (n == 1) return 0.0;
  double mean = 0.0;
  std::vector<double> c(n);
  for (std::size_t j = 0; j < n; ++j) {
    c[j] = std::cos((x - data[j]) / h);
    mean += c[j];
  }
  mean /= static_cast<double>(n);
  double s2 = 0.0;
  for (double v : c) s2 += (v - mean) * (v - mean);
  return s2 / static_cast<double>(n - 1);
}

} // namespace deconv
