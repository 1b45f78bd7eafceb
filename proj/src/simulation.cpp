#include "deconv/simulation.hpp"

#include "deconv/asymptotics.hpp"
#include "deconv/bandwidth.hpp"
#include "deconv/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace deconv {

namespace {

double sample_mean(std::span<const double> v)
{
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v)
{
  const double m = sample_mean(v);
  double s2 = 0.0;
  for (double x : v) s2 += (x - m) * (x - m);
  return v.size() > 1 ? std::sqrt(s2 / static_cast<double>(v.size() - 1)) : 0.0;
}

std::string scenario_label(const StudyReport& r)
{
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s n=%zu NSR=%.4g%%", r.target_name.c_str(),
                r.n, r.nsr_percent);
  return buf;
}

} // namespace

StudyReport run_study(const StudyConfig& config)
{
  if (config.replications < 1)
    throw std::invalid_argument("run_study: replications must be >= 1");
  if (config.eval_points.empty())
    throw std::invalid_argument("run_study: eval_points must be nonempty");
  if (config.n < 2)
    throw std::invalid_argument("run_study: n must be >= 2");

  const double h = config.bandwidth
                     ? *config.bandwidth
                     : mise_grid_search(config.kernel, config.noise,
                                        config.target, config.n)
                         .argmin_h;
  if (!(h > 0.0)) throw std::invalid_argument("run_study: bandwidth must be positive");

  StudyReport report;
  report.target_name = config.target.name;
  report.kernel_name = config.kernel.name;
  report.noise_sd = config.noise.sd;
  report.n = config.n;
  report.replications = config.replications;
  report.master_seed = config.master_seed;
  report.h = h;
  report.sigma = theoretical_sd(config.kernel, config.noise, h, config.n);
  report.sigma_tilde = corrected_sd(config.kernel, config.noise, h, config.n);
  report.nsr_percent = nsr(config.target, config.noise);

  EstimatorConfig est{config.kernel, config.noise, h, {}};

  const std::size_t npts = config.eval_points.size();
  const std::size_t reps = config.replications;
  report.points.resize(npts);
  for (std::size_t i = 0; i < npts; ++i) {
    auto& p = report.points[i];
    p.x = config.eval_points[i];
    p.centering = expected_estimate(config.kernel, config.target, h, p.x);
    p.estimates.resize(reps);
    p.fan_plain.resize(reps);
    p.fan_sample_variance.resize(reps);
    p.cosine_variance.resize(reps);
  }

  const double nd = static_cast<double>(config.n);
  const double sqrt_n = std::sqrt(nd);

  std::mutex error_mutex;
  std::string first_error;
  std::size_t first_error_rep = reps;

  auto worker = [&](std::size_t rep_begin, std::size_t rep_end) {
    std::vector<double> z(config.n);
    for (std::size_t r = rep_begin; r < rep_end; ++r) {
      try {
        std::seed_seq seq{static_cast<std::uint32_t>(config.master_seed),
                          static_cast<std::uint32_t>(config.master_seed >> 32),
                          static_cast<std::uint32_t>(r)};
        std::mt19937_64 stream(seq);
        const auto data =
          sample_convolved(config.target, config.noise, config.n, stream);
        for (std::size_t i = 0; i < npts; ++i) {
          auto& p = report.points[i];
          for (std::size_t j = 0; j < config.n; ++j)
            z[j] = smoothed_kernel(est, (p.x - data[j]) / h) / h;
          double zbar = 0.0, zsq = 0.0;
          for (double v : z) {
            zbar += v;
            zsq += v * v;
          }
          zbar /= nd;
          zsq /= nd;
          double zvar = 0.0;
          for (double v : z) zvar += (v - zbar) * (v - zbar);
          zvar /= (nd - 1.0);
          p.estimates[r] = zbar;
          p.fan_plain[r] = sqrt_n * (zbar - p.centering) / std::sqrt(zsq);
          p.fan_sample_variance[r] =
            sqrt_n * (zbar - p.centering) / std::sqrt(zvar);
          p.cosine_variance[r] = cosine_variance_stat(data, p.x, h);
        }
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (r < first_error_rep) {
          first_error_rep = r;
          first_error = e.what();
        }
        return;
      }
    }
  };

  unsigned threads = config.threads ? config.threads
                                    : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
    std::min<std::size_t>(threads, reps));
  if (threads <= 1) {
    worker(0, reps);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = reps * t / threads;
      const std::size_t end = reps * (t + 1) / threads;
      pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  if (first_error_rep < reps)
    throw std::runtime_error("run_study: replication " +
                             std::to_string(first_error_rep) +
                             " failed: " + first_error);

  for (auto& p : report.points) {
    p.sample_mean = sample_mean(p.estimates);
    p.sample_sd = sample_sd(p.estimates);
  }
  return report;
}

Histogram histogram_export(const StudyReport& report, std::size_t point_index,
                           std::size_t bins)
{
  if (point_index >= report.points.size())
    throw std::out_of_range("histogram_export: point index out of range");
  if (bins < 2)
    throw std::invalid_argument("histogram_export: bins must be >= 2");
  const auto& samples = report.points[point_index].estimates;
  const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  double lo = *mn, hi = *mx;
  if (lo == hi) hi = lo + 1.0; // degenerate sample set still bins cleanly
  const double width = (hi - lo) / static_cast<double>(bins);

  Histogram hist;
  hist.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b)
    hist.edges[b] = lo + width * static_cast<double>(b);
  hist.counts.assign(bins, 0);
  for (double s : samples) {
    auto b = static_cast<std::size_t>((s - lo) / width);
    if (b >= bins) b = bins - 1; // right edge inclusive
    ++hist.counts[b];
  }
  return hist;
}

std::string table_render_csv(std::span<const StudyReport> reports,
                             TableKind kind)
{
  if (reports.empty())
    throw std::invalid_argument("table_render: no reports");
  std::ostringstream out;
  out.precision(10);
  out << "scenario,h,mu1,mu2,sd1,sd2";
  if (kind == TableKind::estimates) out << ",sigma,sigma_tilde";
  out << '\n';
  for (const auto& r : reports) {
    double mu[2] = {0, 0}, sd[2] = {0, 0};
    for (std::size_t i = 0; i < 2 && i < r.points.size(); ++i) {
      const auto& p = r.points[i];
      if (kind == TableKind::estimates) {
        mu[i] = p.sample_mean;
        sd[i] = p.sample_sd;
      } else {
        mu[i] = sample_mean(p.fan_sample_variance);
        sd[i] = sample_sd(p.fan_sample_variance);
      }
    }
    out << '"' << scenario_label(r) << '"' << ',' << r.h << ',' << mu[0] << ','
        << mu[1] << ',' << sd[0] << ',' << sd[1];
    if (kind == TableKind::estimates)
      out << ',' << r.sigma << ',' << r.sigma_tilde;
    out << '\n';
  }
  return out.str();
}

std::string table_render_text(std::span<const StudyReport> reports,
                              TableKind kind)
{
  if (reports.empty())
    throw std::invalid_argument("table_render: no reports");
  std::ostringstream out;
  char line[256];
  if (kind == TableKind::estimates) {
    std::snprintf(line, sizeof(line), "%-26s %6s %8s %8s %8s %8s %8s %8s\n",
                  "scenario", "h", "mu1", "mu2", "sd1", "sd2", "sigma",
                  "sigma~");
  } else {
    std::snprintf(line, sizeof(line), "%-26s %6s %8s %8s %8s %8s\n", "scenario",
                  "h", "mu1", "mu2", "sd1", "sd2");
  }
  out << line;
  for (const auto& r : reports) {
    double mu[2] = {0, 0}, sd[2] = {0, 0};
    for (std::size_t i = 0; i < 2 && i < r.points.size(); ++i) {
      const auto& p = r.points[i];
      if (kind == TableKind::estimates) {
        mu[i] = p.sample_mean;
        sd[i] = p.sample_sd;
      } else {
        mu[i] = sample_mean(p.fan_sample_variance);
        sd[i] = sample_sd(p.fan_sample_variance);
      }
    }
    if (kind == TableKind::estimates) {
      std::snprintf(line, sizeof(line),
                    "%-26s %6.2f %8.3f %8.3f %8.4f %8.4f %8.3f %8.3f\n",
                    scenario_label(r).c_str(), r.h, mu[0], mu[1], sd[0], sd[1],
                    r.sigma, r.sigma_tilde);
    } else {
      std::snprintf(line, sizeof(line), "%-26s %6.2f %8.3f %8.3f %8.3f %8.3f\n",
                    scenario_label(r).c_str(), r.h, mu[0], mu[1], sd[0], sd[1]);
    }
    out << line;
  }
  return out.str();
}

std::string to_json(const StudyReport& report)
{
  nlohmann::json j;
  j["target"] = report.target_name;
  j["kernel"] = report.kernel_name;
  j["noise_sd"] = report.noise_sd;
  j["n"] = report.n;
  j["replications"] = report.replications;
  j["master_seed"] = report.master_seed;
  j["h"] = report.h;
  j["sigma"] = report.sigma;
  j["sigma_tilde"] = report.sigma_tilde;
  j["nsr_percent"] = report.nsr_percent;
  j["points"] = nlohmann::json::array();
  for (const auto& p : report.points) {
    nlohmann::json pj;
    pj["x"] = p.x;
    pj["centering"] = p.centering;
    pj["sample_mean"] = p.sample_mean;
    pj["sample_sd"] = p.sample_sd;
    pj["estimates"] = p.estimates;
    pj["fan_plain"] = p.fan_plain;
    pj["fan_sample_variance"] = p.fan_sample_variance;
    pj["cosine_variance"] = p.cosine_variance;
    j["points"].push_back(std::move(pj));
  }
  return j.dump(2);
}

std::string histogram_csv(const Histogram& histogram)
{
  std::ostringstream out;
  out.precision(10);
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t b = 0; b < histogram.counts.size(); ++b)
    out << histogram.edges[b] << ',' << histogram.edges[b + 1] << ','
        << histogram.counts[b] << '\n';
  return out.str();
}

} // namespace deconv
