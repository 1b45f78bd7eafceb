#pragma once

// Test-only numerical oracles, independent of the library's quadrature and
// special-function paths.

#include <cmath>
#include <cstddef>
#include <functional>

namespace oracles {

//! Composite Simpson rule with n subintervals (n made even internally).
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, std::size_t n = 2000)
{
  if (n % 2) ++n;
  const double h = (b - a) / static_cast<double>(n);
  double sum = f(a) + f(b);
  for (std::size_t i = 1; i < n; ++i)
    sum += f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

//! Imaginary error function via its Maclaurin series; adequate for |x| < 3.
inline double erfi(double x)
{
  constexpr double inv_sqrt_pi = 0.5641895835477563;
  double term = x;
  double sum = 0.0;
  for (int n = 0; n < 60; ++n) {
    sum += term / (2.0 * n + 1.0);
    term *= x * x / (n + 1.0);
    if (std::abs(term) < 1e-18) break;
  }
  return 2.0 * inv_sqrt_pi * sum;
}

} // namespace oracles
