#pragma once

#include "deconv/kernels.hpp"
#include "deconv/noise.hpp"
#include "deconv/targets.hpp"

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace deconv {

//! Exact MISE evaluated on a bandwidth grid, with the minimizer.
struct MiseCurve {
  std::vector<double> bandwidths;
  std::vector<double> mise;
  double argmin_h = 0.0;
  std::size_t n = 0;
};

//! Exact MISE of f_nh via characteristic functions:
//!   (1/(2 pi n)) int phi_w(ht)^2 / |phi_k|^2 dt
//!   + (1/(2 pi)) (1 - 1/n) int phi_w(ht)^2 |phi_f|^2 dt
//!   - (1/pi) int phi_w(ht) |phi_f|^2 dt
//!   + (1/(2 pi)) int |phi_f|^2 dt,
//! the first three truncated to |t| <= 1/h. Bandwidths where the variance
//! integrand overflows yield +inf.
double exact_mise(const Kernel& kernel, const ErrorModel& noise,
                  const TargetDensity& target, std::size_t n, double h);

//! Evaluates exact_mise on the grid h_k = 0.01 k, k = 1..100, and returns
//! the curve with its minimizer (smallest h among ties; +inf entries
//! excluded). Throws std::runtime_error when every entry is infinite.
MiseCurve mise_grid_search(const Kernel& kernel, const ErrorModel& noise,
                           const TargetDensity& target, std::size_t n);

//! CSV rendering with header "h,mise"; infinite entries are left empty.
void write_csv(const MiseCurve& curve, std::ostream& out);

} // namespace deconv
