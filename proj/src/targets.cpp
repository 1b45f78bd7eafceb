#include "deconv/targets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace deconv {

namespace {

constexpr double kPi = std::numbers::pi;

double normal_pdf(double x, double mean, double sd)
{
  const double z = (x - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * kPi));
}

std::complex<double> normal_cf(double t, double mean, double sd)
{
  return std::exp(std::complex<double>(-0.5 * sd * sd * t * t, mean * t));
}

} // namespace

TargetDensity make_density_1()
{
  TargetDensity d;
  d.name = "normal";
  d.pdf = [](double x) { return normal_pdf(x, 0.0, 1.0); };
  d.cf = [](double t) { return normal_cf(t, 0.0, 1.0); };
  d.mean = 0.0;
  d.variance = 1.0;
  d.sampler = [](std::mt19937_64& g) {
    std::normal_distribution<double> n;
    return n(g);
  };
  return d;
}

TargetDensity make_density_2()
{
  TargetDensity d;
  d.name = "chisq3";
  d.pdf = [](double x) {
    if (x <= 0.0) return 0.0;
    return std::sqrt(x) * std::exp(-0.5 * x) / std::sqrt(2.0 * kPi);
  };
  // (1 - 2it)^{-3/2}; the base has positive real part for all real t, so the
  // principal branch is the continuous one with value 1 at t = 0.
  d.cf = [](double t) {
    return std::pow(std::complex<double>(1.0, -2.0 * t), -1.5);
  };
  d.mean = 3.0;
  d.variance = 6.0;
  // Sum of squares of three standard normals: exact, no rejection step.
  d.sampler = [](std::mt19937_64& g) {
    std::normal_distribution<double> n;
    const double a = n(g), b = n(g), c = n(g);
    return a * a + b * b + c * c;
  };
  return d;
}

TargetDensity make_density_3()
{
  TargetDensity d;
  d.name = "mixture";
  d.pdf = [](double x) {
    return 0.6 * normal_pdf(x, -2.0, 1.0) + 0.4 * normal_pdf(x, 2.0, 0.8);
  };
  d.cf = [](double t) {
    return 0.6 * normal_cf(t, -2.0, 1.0) + 0.4 * normal_cf(t, 2.0, 0.8);
  };
  d.mean = -0.4;
  // 0.6 (1 + 4) + 0.4 (0.64 + 4) - 0.4^2
  d.variance = 4.696;
  d.sampler = [](std::mt19937_64& g) {
    std::bernoulli_distribution pick(0.6);
    std::normal_distribution<double> n;
    return pick(g) ? -2.0 + n(g) : 2.0 + 0.8 * n(g);
  };
  return d;
}

TargetDensity target_by_name(const std::string& name)
{
  if (name == "normal") return make_density_1();
  if (name == "chisq3") return make_density_2();
  if (name == "mixture") return make_density_3();
  throw std::invalid_argument("unknown target: " + name +
                              " (expected normal | chisq3 | mixture)");
}

double nsr(const TargetDensity& target, const ErrorModel& noise)
{
  if (!(target.variance > 0.0))
    throw std::invalid_argument("nsr: target variance must be positive");
  return 100.0 * noise.sd * noise.sd / target.variance;
}

std::vector<double> sample_convolved(const TargetDensity& target,
                                     const ErrorModel& noise, std::size_t n,
                                     std::mt19937_64& stream)
{
  if (n < 1)
    throw std::invalid_argument("sample_convolved: n must be >= 1");
  std::vector<double> out(n);
  std::normal_distribution<double> z(0.0, noise.sd);
  for (auto& x : out)
    x = target.sampler(stream) + z(stream);
  return out;
}

} // namespace deconv
