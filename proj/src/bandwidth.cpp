#include "deconv/bandwidth.hpp"

#include "deconv/errors.hpp"
#include "deconv/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace deconv {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
} // namespace

double exact_mise(const Kernel& kernel, const ErrorModel& noise,
                  const TargetDensity& target, std::size_t n, double h)
{
  if (!(h > 0.0)) throw std::invalid_argument("exact_mise: h must be positive");
  if (n < 1) throw std::invalid_argument("exact_mise: n must be >= 1");

  const auto& phi_w = kernel.fourier_transform;
  const auto norm_f2 = [&](double t) { return std::norm(target.cf(t)); };
  const double nd = static_cast<double>(n);

  // Integrals are folded onto [0, 1] via t = s/h and evenness.
  double variance;
  try {
    variance = integrate(
                 [&](double s) {
                   const double w = phi_w(s);
                   const double inv = inverse_cf_magnitude(noise, s / h);
                   return w * w * inv * inv;
                 },
                 0.0, 1.0, 1e-12) /
               (kPi * nd * h);
  } catch (const OverflowError&) {
    return kInf;
  }
  if (!std::isfinite(variance)) return kInf;

  const double smoothed_power =
    integrate(
      [&](double s) {
        const double w = phi_w(s);
        return w * w * norm_f2(s / h);
      },
      0.0, 1.0, 1e-12) /
    (kPi * h);
  const double cross = integrate([&](double s) { return phi_w(s) * norm_f2(s / h); },
                                 0.0, 1.0, 1e-12) /
                       (kPi * h);
  const double target_power = integrate_to_inf(norm_f2, 0.0, 1e-12) / kPi;

  return variance + (1.0 - 1.0 / nd) * smoothed_power - 2.0 * cross +
         target_power;
}

MiseCurve mise_grid_search(const Kernel& kernel, const ErrorModel& noise,
                           const TargetDensity& target, std::size_t n)
{
  MiseCurve curve;
  curve.n = n;
  curve.bandwidths.reserve(100);
  curve.mise.reserve(100);
  double best = kInf;
  double best_h = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double h = 0.01 * k;
    const double m = exact_mise(kernel, noise, target, n, h);
    curve.bandwidths.push_back(h);
    curve.mise.push_back(m);
    if (m < best) { // strict: ties keep the smaller h
      best = m;
      best_h = h;
    }
  }
  if (!std::isfinite(best))
    throw std::runtime_error(
      "mise_grid_search: MISE is infinite on the whole grid (noise sd too "
      "large relative to every candidate bandwidth)");
  curve.argmin_h = best_h;
  return curve;
}

void write_csv(const MiseCurve& curve, std::ostream& out)
{
  out << "h,mise\n";
  for (std::size_t i = 0; i < curve.bandwidths.size(); ++i) {
    out << curve.bandwidths[i] << ',';
    if (std::isfinite(curve.mise[i])) out << curve.mise[i];
    out << '\n';
  }
}

} // namespace deconv
