#include "deconv/kernels.hpp"

#include "deconv/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace deconv {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double u)
{
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

// Closed form of the inverse transform of (1 - t^2)^3. Cancellation between
// the x^{-4} and x^{-6} terms makes this unusable near the origin.
double fan_closed_form(double x)
{
  const double x2 = x * x;
  const double x4 = x2 * x2;
  return 48.0 * std::cos(x) / (kPi * x4) * (1.0 - 15.0 / x2) -
         144.0 * std::sin(x) / (kPi * x4 * x) * (2.0 - 5.0 / x2);
}

// w(x) = (1/pi) sum_m (-1)^m c_m x^{2m} / (2m)!  with
// c_m = int_0^1 t^{2m} (1 - t^2)^3 dt.
double fan_series(double x)
{
  const double x2 = x * x;
  double term = 1.0; // x^{2m} / (2m)!
  double sum = 0.0;
  for (int m = 0; m < 16; ++m) {
    const double k = 2.0 * m;
    const double cm = 1.0 / (k + 1.0) - 3.0 / (k + 3.0) + 3.0 / (k + 5.0) -
                      1.0 / (k + 7.0);
    sum += (m % 2 == 0 ? cm : -cm) * term;
    term *= x2 / ((k + 1.0) * (k + 2.0));
    if (term < 1e-19) break;
  }
  return sum / kPi;
}

} // namespace

Kernel make_sinc()
{
  Kernel k;
  k.name = "sinc";
  k.fourier_transform = [](double t) { return std::abs(t) <= 1.0 ? 1.0 : 0.0; };
  k.time_domain = [](double x) { return sinc(x) / kPi; };
  k.edge_constant_A = 1.0;
  k.edge_exponent_alpha = 0.0;
  return k;
}

Kernel make_fan()
{
  Kernel k;
  k.name = "fan";
  k.fourier_transform = [](double t) {
    if (std::abs(t) > 1.0) return 0.0;
    const double u = 1.0 - t * t;
    return u * u * u;
  };
  k.time_domain = [](double x) {
    return std::abs(x) < 1.0 ? fan_series(x) : fan_closed_form(x);
  };
  k.edge_constant_A = 8.0;
  k.edge_exponent_alpha = 3.0;
  return k;
}

Kernel make_wand()
{
  Kernel k;
  k.name = "wand";
  k.fourier_transform = [](double t) {
    const double a = std::abs(t);
    if (a > 1.0) return 0.0;
    if (a >= 0.5) {
      const double u = 1.0 - a;
      return 2.0 * u * u * u;
    }
    return 6.0 * a * a * a - 6.0 * t * t + 1.0;
  };
  k.time_domain = [](double x) {
    const double s = sinc(x / 4.0);
    const double s2 = s * s;
    return 3.0 / (8.0 * kPi) * s2 * s2;
  };
  k.edge_constant_A = 2.0;
  k.edge_exponent_alpha = 3.0;
  return k;
}

Kernel kernel_by_name(const std::string& name)
{
  if (name == "sinc") return make_sinc();
  if (name == "fan") return make_fan();
  if (name == "wand") return make_wand();
  throw std::invalid_argument("unknown kernel: " + name +
                              " (expected sinc | fan | wand)");
}

void validate_kernel(const Kernel& kernel)
{
  const auto& phi = kernel.fourier_transform;
  if (std::abs(phi(0.0) - 1.0) > 1e-9)
    throw std::invalid_argument("kernel " + kernel.name + ": phi_w(0) != 1");
  for (int i = 0; i <= 1000; ++i) {
    const double t = i * 1e-3;
    if (std::abs(phi(t) - phi(-t)) > 1e-12)
      throw std::invalid_argument("kernel " + kernel.name +
                                  ": phi_w not symmetric at t = " +
                                  std::to_string(t));
  }
  for (double t : {1.0005, 1.5, 3.0, 10.0}) {
    if (phi(t) != 0.0 || phi(-t) != 0.0)
      throw std::invalid_argument("kernel " + kernel.name +
                                  ": phi_w has support outside [-1,1]");
  }
  // Fourier inversion must reproduce time_domain.
  for (double x : {0.0, 0.7, 1.3, 2.5, 5.0, 10.0}) {
    const double inv =
      integrate([&](double t) { return std::cos(t * x) * phi(t); }, 0.0, 1.0) /
      kPi;
    if (std::abs(inv - kernel.time_domain(x)) > 1e-6)
      throw std::invalid_argument(
        "kernel " + kernel.name +
        ": time_domain inconsistent with phi_w at x = " + std::to_string(x));
  }
}

} // namespace deconv
