#pragma once

#include <functional>
#include <string>

namespace deconv {

//! A deconvolution kernel. The Fourier transform is real, symmetric and
//! supported on [-1, 1], with phi_w(0) = 1 and edge behaviour
//! phi_w(1 - t) ~ A t^alpha as t -> 0.
struct Kernel {
  std::string name;
  std::function<double(double)> fourier_transform; // phi_w(t), zero outside [-1,1]
  std::function<double(double)> time_domain;       // w(x)
  double edge_constant_A = 1.0;
  double edge_exponent_alpha = 0.0;
};

//! sinc kernel: w(x) = sin(x)/(pi x), phi_w = 1 on [-1,1]. A = 1, alpha = 0.
Kernel make_sinc();

//! w(x) with phi_w(t) = (1 - t^2)^3 on [-1,1]. A = 8, alpha = 3.
Kernel make_fan();

//! w(x) = (3/(8 pi)) (sin(x/4)/(x/4))^4, piecewise-cubic phi_w. A = 2, alpha = 3.
Kernel make_wand();

//! Look up a built-in kernel by name ("sinc" | "fan" | "wand").
//! Throws std::invalid_argument for unknown names.
Kernel kernel_by_name(const std::string& name);

//! Checks the Condition-1 style invariants of a user-supplied kernel on a
//! t-grid of resolution 1e-3: phi_w(0) = 1, symmetry, support [-1,1], and
//! consistency of time_domain with Fourier inversion of phi_w.
//! Throws std::invalid_argument on the first violated property.
void validate_kernel(const Kernel& kernel);

} // namespace deconv
