#include "deconv/estimator.hpp"

#include "deconv/errors.hpp"
#include "deconv/quadrature.hpp"

#include <fftw3.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace deconv {

namespace {

constexpr double kPi = std::numbers::pi;

void check_config(const EstimatorConfig& config)
{
  if (!(config.bandwidth > 0.0))
    throw std::invalid_argument("bandwidth must be positive");
}

void check_grid(const GridSpec& grid)
{
  if (!(grid.lo < grid.hi))
    throw std::invalid_argument("grid: lo must be < hi");
  if (grid.num_points < 256 || !std::has_single_bit(grid.num_points))
    throw std::invalid_argument("grid: num_points must be a power of two >= 256");
}

// FFTW plan creation/destruction is not thread-safe.
std::mutex fftw_mutex;

void fft_inplace(std::vector<std::complex<double>>& a, int sign)
{
  fftw_plan plan;
  auto* buf = reinterpret_cast<fftw_complex*>(a.data());
  {
    std::lock_guard lock(fftw_mutex);
    plan = fftw_plan_dft_1d(static_cast<int>(a.size()), buf, buf, sign,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_mutex);
    fftw_destroy_plan(plan);
  }
}

} // namespace

std::complex<double> empirical_cf(std::span<const double> data, double t)
{
  if (data.empty())
    throw std::invalid_argument("empirical_cf: data must be nonempty");
  std::complex<double> sum = 0.0;
  for (double x : data)
    sum += std::complex<double>(std::cos(t * x), std::sin(t * x));
  return sum / static_cast<double>(data.size());
}

double smoothed_kernel(const EstimatorConfig& config, double u)
{
  check_config(config);
  const double h = config.bandwidth;
  // Probe the largest frequency first so overflow surfaces as an error
  // rather than an inf-valued quadrature.
  inverse_cf_magnitude(config.noise, 1.0 / h);
  const auto& phi_w = config.kernel.fourier_transform;
  const auto& noise = config.noise;
  return integrate(
           [&](double t) {
             return std::cos(t * u) * phi_w(t) *
                    inverse_cf_magnitude(noise, t / h);
           },
           0.0, 1.0) /
         kPi;
}

double estimate_at(const EstimatorConfig& config, std::span<const double> data,
                   double x)
{
  if (data.empty())
    throw std::invalid_argument("estimate_at: data must be nonempty");
  check_config(config);
  const double h = config.bandwidth;
  double sum = 0.0;
  for (double xj : data)
    sum += smoothed_kernel(config, (x - xj) / h);
  return sum / (static_cast<double>(data.size()) * h);
}

GridSpec default_grid(std::span<const double> data,
                      const EstimatorConfig& config)
{
  const auto [mn, mx] = std::minmax_element(data.begin(), data.end());
  const double pad = 4.0 * config.bandwidth + 4.0 * config.noise.sd;
  GridSpec g;
  g.lo = *mn - pad;
  g.hi = *mx + pad;
  g.num_points = 1024;
  return g;
}

EstimateGrid estimate_grid_fft(const EstimatorConfig& config,
                               std::span<const double> data)
{
  if (data.empty())
    throw std::invalid_argument("estimate_grid_fft: data must be nonempty");
  check_config(config);
  check_grid(config.grid);

  const double h = config.bandwidth;
  const std::size_t n_grid = config.grid.num_points;
  const double lo = config.grid.lo;
  const double delta = (config.grid.hi - lo) / static_cast<double>(n_grid - 1);
  const double dt = 2.0 * kPi / (delta * static_cast<double>(n_grid));
  if (dt > 1.0 / h)
    throw std::invalid_argument(
      "estimate_grid_fft: grid too coarse, fewer than 2 frequency points "
      "inside |t| <= 1/h");

  // Linear binning; points outside the grid go to the boundary bins.
  std::vector<std::complex<double>> coef(n_grid, 0.0);
  const double wgt = 1.0 / static_cast<double>(data.size());
  for (double x : data) {
    const double pos = std::clamp((x - lo) / delta, 0.0,
                                  static_cast<double>(n_grid - 1));
    const auto j = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(j);
    coef[j] += (1.0 - frac) * wgt;
    if (j + 1 < n_grid) coef[j + 1] += frac * wgt;
  }

  // Binned empirical cf at t_k (up to the common phase e^{i t_k lo}).
  fft_inplace(coef, FFTW_BACKWARD);

  EstimateGrid result;
  result.frequencies.resize(n_grid);
  result.multiplier.resize(n_grid);
  for (std::size_t k = 0; k < n_grid; ++k) {
    const double freq = (k <= n_grid / 2 ? static_cast<double>(k)
                                         : static_cast<double>(k) -
                                             static_cast<double>(n_grid)) *
                        dt;
    result.frequencies[k] = freq;
    double mult = 0.0;
    if (std::abs(freq) * h <= 1.0) {
      mult = config.kernel.fourier_transform(h * freq) *
             inverse_cf_magnitude(config.noise, freq);
      // compensate the linear-binning attenuation: the hat kernel of width
      // delta has transform sinc^2(t delta / 2)
      const double half = 0.5 * freq * delta;
      if (half != 0.0) {
        const double s = std::sin(half) / half;
        mult /= s * s;
      }
    }
    result.multiplier[k] = mult;
    coef[k] *= mult;
  }

  fft_inplace(coef, FFTW_FORWARD);

  result.points.resize(n_grid);
  result.values.resize(n_grid);
  const double scale = 1.0 / (static_cast<double>(n_grid) * delta);
  for (std::size_t j = 0; j < n_grid; ++j) {
    result.points[j] = lo + static_cast<double>(j) * delta;
    result.values[j] = coef[j].real() * scale;
  }
  return result;
}

double expected_estimate(const Kernel& kernel, const TargetDensity& target,
                         double h, double x)
{
  if (!(h > 0.0)) throw std::invalid_argument("bandwidth must be positive");
  const auto& phi_w = kernel.fourier_transform;
  return integrate(
           [&](double t) {
             const auto c = target.cf(t);
             return (c.real() * std::cos(t * x) + c.imag() * std::sin(t * x)) *
                    phi_w(h * t);
           },
           0.0, 1.0 / h) /
         kPi;
}

double expected_estimate_deconvolved(const Kernel& kernel,
                                     const ErrorModel& noise,
                                     const TargetDensity& target, double h,
                                     double x)
{
  if (!(h > 0.0)) throw std::invalid_argument("bandwidth must be positive");
  const auto& phi_w = kernel.fourier_transform;
  return integrate(
           [&](double t) {
             const auto c = target.cf(t);
             return (c.real() * std::cos(t * x) + c.imag() * std::sin(t * x)) *
                    phi_w(h * t) * inverse_cf_magnitude(noise, t);
           },
           0.0, 1.0 / h) /
         kPi;
}

void write_csv(const EstimateGrid& grid, std::ostream& out)
{
  out << "x,f_nh\n";
  for (std::size_t i = 0; i < grid.points.size(); ++i)
    out << grid.points[i] << ',' << grid.values[i] << '\n';
}

std::string to_json(const EstimateGrid& grid)
{
  nlohmann::json j;
  j["x"] = grid.points;
  j["f"] = grid.values;
  return j.dump();
}

} // namespace deconv
