#include "deconv/kernels.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace deconv;

namespace {
constexpr double kPi = std::numbers::pi;

double inversion_oracle(const Kernel& k, double x)
{
  return oracles::simpson(
           [&](double t) { return std::cos(t * x) * k.fourier_transform(t); },
           0.0, 1.0, 4000) /
         kPi;
}
} // namespace

TEST_CASE("sinc kernel")
{
  const auto k = make_sinc();
  CHECK(k.fourier_transform(0.5) == 1.0);
  CHECK(k.fourier_transform(1.01) == 0.0);
  CHECK(k.time_domain(0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-12));
  CHECK(k.edge_constant_A == 1.0);
  CHECK(k.edge_exponent_alpha == 0.0);
}

TEST_CASE("fan kernel closed form and edge behaviour")
{
  const auto k = make_fan();
  CHECK(k.fourier_transform(0.5) == doctest::Approx(0.421875).epsilon(1e-14));
  // (1 - (1-t)^2)^3 = 8 t^3 (1 - t/2)^3
  const double t = 1e-3;
  CHECK(k.fourier_transform(1.0 - t) / (8.0 * t * t * t) ==
        doctest::Approx(1.0).epsilon(5e-3));
  for (double x : {2.0, 5.0, 10.0})
    CHECK(std::abs(k.time_domain(x) - inversion_oracle(k, x)) < 1e-8);
  // frozen values of the inversion oracle
  CHECK(k.time_domain(2.0) == doctest::Approx(0.11597066397546).epsilon(1e-8));
  CHECK(k.time_domain(5.0) == doctest::Approx(0.02809120312726).epsilon(1e-8));
  CHECK(k.time_domain(10.0) == doctest::Approx(-6.0345206024e-4).epsilon(1e-6));
}

TEST_CASE("fan kernel series/closed-form splice is seamless")
{
  const auto k = make_fan();
  for (double x : {0.9990, 0.9999, 1.0001, 1.0010})
    CHECK(std::abs(k.time_domain(x) - inversion_oracle(k, x)) < 1e-9);
}

TEST_CASE("wand kernel")
{
  const auto k = make_wand();
  CHECK(k.time_domain(0.0) == doctest::Approx(3.0 / (8.0 * kPi)).epsilon(1e-14));
  CHECK(k.fourier_transform(0.75) == doctest::Approx(0.03125).epsilon(1e-14));
  CHECK(k.fourier_transform(0.25) == doctest::Approx(0.71875).epsilon(1e-14));
  CHECK(k.edge_constant_A == 2.0);
  CHECK(k.edge_exponent_alpha == 3.0);
}

TEST_CASE("Fourier inversion reproduces time_domain on [-20, 20]")
{
  for (const auto& k : {make_sinc(), make_fan(), make_wand()}) {
    for (double x = -20.0; x <= 20.0; x += 1.37)
      CHECK(std::abs(k.time_domain(x) - inversion_oracle(k, x)) < 1e-6);
  }
}

TEST_CASE("symmetry of time_domain")
{
  for (const auto& k : {make_sinc(), make_fan(), make_wand()})
    for (double x : {0.3, 1.7, 4.4, 12.0})
      CHECK(k.time_domain(x) == doctest::Approx(k.time_domain(-x)).epsilon(1e-13));
}

TEST_CASE("edge ratio phi_w(1-t)/(A t^alpha) approaches 1")
{
  const auto ratio = [](const Kernel& k, double t) {
    return k.fourier_transform(1.0 - t) /
           (k.edge_constant_A * std::pow(t, k.edge_exponent_alpha));
  };
  // sinc and wand obey the edge law exactly near t = 1
  for (const auto& k : {make_sinc(), make_wand()})
    for (int e = 2; e <= 5; ++e)
      CHECK(std::abs(ratio(k, std::pow(10.0, -e)) - 1.0) < 1e-10);
  // the fan kernel only satisfies it asymptotically; the error shrinks
  const auto fan = make_fan();
  double prev_err = 1e100;
  for (int e = 2; e <= 5; ++e) {
    const double err = std::abs(ratio(fan, std::pow(10.0, -e)) - 1.0);
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err < 1e-3);
}

TEST_CASE("time_domain integrates to 1 over a wide truncation interval")
{
  // Tail oscillations are killed by averaging truncations half a period
  // apart; the fan and wand tails then decay like T^-4 and T^-3.
  const auto trunc_integral = [](const Kernel& k, double T) {
    const double a = oracles::simpson([&](double x) { return k.time_domain(x); },
                                      0.0, T, 200000);
    const double b = oracles::simpson([&](double x) { return k.time_domain(x); },
                                      0.0, T + kPi, 200000);
    return a + b; // each side doubles by symmetry; (2a + 2b)/2
  };
  CHECK(trunc_integral(make_fan(), 800.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(trunc_integral(make_wand(), 800.0) == doctest::Approx(1.0).epsilon(1e-6));
  // sinc decays like 1/x; the averaged truncation converges like T^-2.
  CHECK(trunc_integral(make_sinc(), 800.0) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("validate_kernel accepts the built-ins and rejects a broken kernel")
{
  for (const auto& k : {make_sinc(), make_fan(), make_wand()})
    CHECK_NOTHROW(validate_kernel(k));

  auto bad = make_fan();
  bad.time_domain = [](double) { return 0.0; };
  CHECK_THROWS_AS(validate_kernel(bad), std::invalid_argument);

  auto unnormalized = make_fan();
  unnormalized.fourier_transform = [](double t) {
    return std::abs(t) <= 1.0 ? 0.9 : 0.0;
  };
  CHECK_THROWS_AS(validate_kernel(unnormalized), std::invalid_argument);
}

TEST_CASE("kernel_by_name")
{
  CHECK(kernel_by_name("fan").name == "fan");
  CHECK_THROWS_AS(kernel_by_name("gauss"), std::invalid_argument);
}
