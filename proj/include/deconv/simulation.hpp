#pragma once

#include "deconv/estimator.hpp"
#include "deconv/kernels.hpp"
#include "deconv/noise.hpp"
#include "deconv/targets.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace deconv {

//! One Monte Carlo experiment: replicate sampling from g = f * k, estimate
//! f_nh at the evaluation points, record the standardized statistics.
struct StudyConfig {
  TargetDensity target;
  ErrorModel noise;
  Kernel kernel;
  std::size_t n = 50;
  std::size_t replications = 500;
  std::optional<double> bandwidth; // empty => exact-MISE grid search
  std::vector<double> eval_points;
  std::uint64_t master_seed = 1;
  unsigned threads = 0; // 0 => hardware concurrency
};

//! Per-evaluation-point Monte Carlo record. The raw samples are kept for
//! histogram export.
struct PointStats {
  double x = 0.0;
  double centering = 0.0; // E[f_nh(x)] = f * K_h(x)
  double sample_mean = 0.0;
  double sample_sd = 0.0;
  std::vector<double> estimates;
  std::vector<double> fan_plain;
  std::vector<double> fan_sample_variance;
  std::vector<double> cosine_variance;
};

struct StudyReport {
  std::string target_name;
  std::string kernel_name;
  double noise_sd = 0.0;
  std::size_t n = 0;
  std::size_t replications = 0;
  std::uint64_t master_seed = 0;
  double h = 0.0;
  double sigma = 0.0;       // theoretical_sd(h, n)
  double sigma_tilde = 0.0; // corrected_sd(h, n)
  double nsr_percent = 0.0;
  std::vector<PointStats> points;
};

//! Runs the study. Deterministic given master_seed, independent of thread
//! count (per-replication RNG streams, order-independent aggregation).
//! Estimator overflow is reported with the failing replication index.
StudyReport run_study(const StudyConfig& config);

struct Histogram {
  std::vector<double> edges;       // bins + 1 entries
  std::vector<std::size_t> counts; // bins entries, summing to replications
};

//! Histogram of the stored f_nh(x) samples at one evaluation point.
//! Throws std::out_of_range for a bad index, std::invalid_argument for
//! bins < 2.
Histogram histogram_export(const StudyReport& report, std::size_t point_index,
                           std::size_t bins);

enum class TableKind {
  estimates,     // f/n/NSR, h, mu1, mu2, sd1, sd2, sigma, sigma_tilde
  fan_statistics // f/n/NSR, h, mu1, mu2, sd1, sd2 (self-normalized statistic)
};

std::string table_render_csv(std::span<const StudyReport> reports,
                             TableKind kind = TableKind::estimates);
std::string table_render_text(std::span<const StudyReport> reports,
                              TableKind kind = TableKind::estimates);

std::string to_json(const StudyReport& report);
std::string histogram_csv(const Histogram& histogram);

} // namespace deconv
