#include "deconv/targets.hpp"

#include "deconv/noise.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace deconv;

namespace {

constexpr double kPi = std::numbers::pi;

std::complex<double> empirical_cf_of(const std::vector<double>& x, double t)
{
  std::complex<double> s = 0.0;
  for (double v : x) s += std::complex<double>(std::cos(t * v), std::sin(t * v));
  return s / static_cast<double>(x.size());
}

void check_moments(const TargetDensity& d)
{
  std::mt19937_64 g(7);
  const std::size_t n = 100000;
  double sum = 0.0, sumsq = 0.0;
  std::vector<double> x(n);
  for (auto& v : x) {
    v = d.sampler(g);
    sum += v;
  }
  const double mean = sum / n;
  for (double v : x) sumsq += (v - mean) * (v - mean);
  const double var = sumsq / (n - 1);
  // crude standard errors; 5 SEs per the type contract
  const double se_mean = std::sqrt(d.variance / n);
  CHECK(std::abs(mean - d.mean) < 5.0 * se_mean);
  CHECK(std::abs(var - d.variance) < 5.0 * d.variance * std::sqrt(2.0 / n) * 2.0);
}

void check_pdf_normalized(const TargetDensity& d, double lo, double hi)
{
  const double mass = oracles::simpson(d.pdf, lo, hi, 40000);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  for (double x = lo; x <= hi; x += 0.23) CHECK(d.pdf(x) >= 0.0);
}

void check_ecf_close(const TargetDensity& d)
{
  std::mt19937_64 g(11);
  const std::size_t n = 100000;
  std::vector<double> x(n);
  for (auto& v : x) v = d.sampler(g);
  for (int i = 0; i <= 60; ++i) {
    const double t = -3.0 + 0.1 * i;
    const auto diff = empirical_cf_of(x, t) - d.cf(t);
    CHECK(std::abs(diff) < 3.0 / std::sqrt(static_cast<double>(n)));
  }
}

} // namespace

TEST_CASE("density #1: standard normal")
{
  const auto d = make_density_1();
  CHECK(d.pdf(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-14));
  CHECK(d.cf(1.0).real() == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK(d.cf(1.0).imag() == 0.0);
  CHECK(d.variance == 1.0);
  check_pdf_normalized(d, -10.0, 10.0);
  check_moments(d);
  check_ecf_close(d);
}

TEST_CASE("density #2: chi-square(3)")
{
  const auto d = make_density_2();
  CHECK(d.pdf(0.0) == 0.0);
  CHECK(d.pdf(-1.0) == 0.0);
  CHECK(std::norm(d.cf(1.0)) == doctest::Approx(std::pow(5.0, -1.5)).epsilon(1e-12));
  // closed-form value at the paper's second evaluation point
  CHECK(d.pdf(0.92) == doctest::Approx(0.2415619450).epsilon(1e-9));
  CHECK(d.variance == 6.0);
  CHECK(d.mean == 3.0);
  check_pdf_normalized(d, 0.0, 60.0);
  check_moments(d);
  check_ecf_close(d);
}

TEST_CASE("chi-square cf stays on the continuous principal branch")
{
  const auto d = make_density_2();
  // |cf| must decay monotonically and the cf must be continuous in t
  std::complex<double> prev = d.cf(-8.0);
  for (double t = -8.0 + 0.01; t <= 8.0; t += 0.01) {
    const auto c = d.cf(t);
    CHECK(std::abs(c - prev) < 0.05);
    prev = c;
  }
  CHECK(d.cf(0.0).real() == doctest::Approx(1.0));
}

TEST_CASE("density #3: two-component normal mixture")
{
  const auto d = make_density_3();
  CHECK(d.cf(0.0).real() == doctest::Approx(1.0));
  CHECK(d.variance == doctest::Approx(4.696).epsilon(1e-14));
  CHECK(d.mean == doctest::Approx(-0.4).epsilon(1e-14));
  // frozen closed-form mixture density at the paper's evaluation point
  CHECK(d.pdf(2.04) == doctest::Approx(0.1992903279).epsilon(1e-9));
  check_pdf_normalized(d, -12.0, 12.0);
  check_moments(d);
  check_ecf_close(d);
}

TEST_CASE("mixture cf equals the weighted sum of component cfs")
{
  const auto d = make_density_3();
  for (double t : {-2.3, -0.7, 0.4, 1.9}) {
    const auto c1 = std::exp(std::complex<double>(-0.5 * t * t, -2.0 * t));
    const auto c2 = std::exp(std::complex<double>(-0.5 * 0.64 * t * t, 2.0 * t));
    CHECK(std::abs(d.cf(t) - (0.6 * c1 + 0.4 * c2)) < 1e-14);
  }
}

TEST_CASE("noise-to-signal ratio")
{
  const auto noise04 = make_gaussian_noise(0.4);
  CHECK(nsr(make_density_1(), noise04) == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(nsr(make_density_2(), noise04) ==
        doctest::Approx(100.0 * 0.16 / 6.0).epsilon(1e-12));
  CHECK(nsr(make_density_1(), make_gaussian_noise(2.0)) ==
        doctest::Approx(400.0).epsilon(1e-12));
  // exact value for the mixture; the published 3% is a rounding artefact
  CHECK(nsr(make_density_3(), noise04) ==
        doctest::Approx(100.0 * 0.16 / 4.696).epsilon(1e-12));

  auto degenerate = make_density_1();
  degenerate.variance = 0.0;
  CHECK_THROWS_AS(nsr(degenerate, noise04), std::invalid_argument);
}

TEST_CASE("sample_convolved")
{
  const auto d = make_density_1();
  const auto noise = make_gaussian_noise(0.4);

  std::mt19937_64 g(3);
  CHECK_THROWS_AS(sample_convolved(d, noise, 0, g), std::invalid_argument);

  std::mt19937_64 a(123), b(123);
  const auto xa = sample_convolved(d, noise, 1000, a);
  const auto xb = sample_convolved(d, noise, 1000, b);
  CHECK(xa == xb);

  std::mt19937_64 c(9);
  const auto x = sample_convolved(d, noise, 100000, c);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= x.size();
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= (x.size() - 1.0);
  // Var X = Var Y + Var Z = 1.16
  CHECK(std::abs(var - 1.16) < 5.0 * 1.16 * std::sqrt(2.0 / x.size()));
}
