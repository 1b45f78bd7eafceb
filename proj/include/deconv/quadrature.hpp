#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <limits>

namespace deconv {

//! Adaptive Gauss-Kronrod (15-point) integration on [a, b].
//! Tolerance is absolute unless the result is large, in which case
//! boost treats it as relative; both uses here are on O(1) integrands.
template <typename F>
double integrate(F&& f, double a, double b, double tol = 1e-10)
{
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
    std::forward<F>(f), a, b, 12, tol);
}

//! Semi-infinite integral over [a, inf).
template <typename F>
double integrate_to_inf(F&& f, double a, double tol = 1e-10)
{
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
    std::forward<F>(f), a, std::numeric_limits<double>::infinity(), 12, tol);
}

} // namespace deconv
