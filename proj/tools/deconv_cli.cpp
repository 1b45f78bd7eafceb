#include "deconv/asymptotics.hpp"
#include "deconv/bandwidth.hpp"
#include "deconv/errors.hpp"
#include "deconv/estimator.hpp"
#include "deconv/kernels.hpp"
#include "deconv/noise.hpp"
#include "deconv/simulation.hpp"
#include "deconv/targets.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> read_data_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read data file: " + path);
  std::vector<double> data;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    // accept either one value per line or the first CSV column
    if (auto comma = line.find(','); comma != std::string::npos)
      line.resize(comma);
    try {
      data.push_back(std::stod(line));
    } catch (const std::exception&) {
      throw UsageError("data file " + path + ": not a number: " + line);
    }
  }
  if (data.empty()) throw UsageError("data file " + path + " is empty");
  return data;
}

std::ofstream open_out(const std::string& path)
{
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open output file: " + path);
  return out;
}

// ---------------------------------------------------------------------------
// Study configs: TOML subset (key = value pairs, [section] per scenario,
// top-level keys act as defaults) or an equivalent JSON document.

json parse_toml_value(const std::string& raw, const std::string& path)
{
  std::string v = raw;
  const auto trim = [](std::string& s) {
    s.erase(0, s.find_first_not_of(" \t"));
    if (auto p = s.find_last_not_of(" \t"); p != std::string::npos)
      s.resize(p + 1);
  };
  trim(v);
  if (v.empty()) throw UsageError(path + ": empty value");
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"')
      throw UsageError(path + ": unterminated string: " + v);
    return v.substr(1, v.size() - 2);
  }
  if (v.front() == '[') {
    if (v.back() != ']') throw UsageError(path + ": unterminated array: " + v);
    json arr = json::array();
    std::stringstream ss(v.substr(1, v.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
      trim(item);
      if (item.empty()) continue;
      arr.push_back(parse_toml_value(item, path));
    }
    return arr;
  }
  if (v == "true") return true;
  if (v == "false") return false;
  try {
    if (v.find_first_of(".eE") == std::string::npos &&
        v.find("inf") == std::string::npos)
      return std::stoll(v);
    return std::stod(v);
  } catch (const std::exception&) {
    throw UsageError(path + ": cannot parse value: " + v);
  }
}

//! Flattens the TOML subset into {"defaults": {...}, "scenarios": [{...}]}.
json load_toml_config(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file: " + path);
  json defaults = json::object();
  json scenarios = json::array();
  json* current = &defaults;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
    if (auto p = trimmed.find_last_not_of(" \t\r"); p != std::string::npos)
      trimmed.resize(p + 1);
    else
      continue;
    const std::string where = path + ":" + std::to_string(lineno);
    if (trimmed.front() == '[') {
      if (trimmed.back() != ']') throw UsageError(where + ": bad section header");
      json s = json::object();
      s["name"] = trimmed.substr(1, trimmed.size() - 2);
      scenarios.push_back(std::move(s));
      current = &scenarios.back();
      continue;
    }
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw UsageError(where + ": expected key = value");
    std::string key = trimmed.substr(0, eq);
    if (auto p = key.find_last_not_of(" \t"); p != std::string::npos)
      key.resize(p + 1);
    (*current)[key] = parse_toml_value(trimmed.substr(eq + 1), where);
  }
  return json{{"defaults", defaults}, {"scenarios", scenarios}};
}

json load_config(const std::string& path)
{
  if (path.size() > 5 && path.ends_with(".json")) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file: " + path);
    json doc;
    try {
      in >> doc;
    } catch (const json::exception& e) {
      throw UsageError(path + ": invalid JSON: " + e.what());
    }
    if (doc.is_object() && !doc.contains("scenarios"))
      doc = json{{"defaults", json::object()}, {"scenarios", json::array({doc})}};
    if (!doc.contains("defaults")) doc["defaults"] = json::object();
    return doc;
  }
  return load_toml_config(path);
}

template <typename T>
T require(const json& merged, const std::string& key, const std::string& where)
{
  if (!merged.contains(key))
    throw UsageError(where + ": missing required key '" + key + "'");
  try {
    return merged.at(key).get<T>();
  } catch (const json::exception&) {
    throw UsageError(where + ": key '" + key + "' has the wrong type");
  }
}

deconv::StudyConfig scenario_config(const json& defaults, const json& scenario,
                                    std::optional<std::uint64_t> seed_override,
                                    const std::string& where)
{
  json merged = defaults;
  merged.update(scenario);

  deconv::StudyConfig cfg;
  cfg.target = deconv::target_by_name(require<std::string>(merged, "target", where));
  cfg.kernel = deconv::kernel_by_name(
    merged.value("kernel", std::string("fan")));
  cfg.noise = deconv::make_gaussian_noise(require<double>(merged, "noise_sd", where));
  cfg.n = require<std::uint64_t>(merged, "n", where);
  cfg.replications = merged.value("replications", std::uint64_t{500});
  cfg.eval_points = require<std::vector<double>>(merged, "eval_points", where);
  if (merged.contains("bandwidth")) {
    const auto& b = merged.at("bandwidth");
    if (b.is_string()) {
      if (b.get<std::string>() != "mise-optimal")
        throw UsageError(where + ": bandwidth must be a number or \"mise-optimal\"");
    } else if (b.is_number()) {
      cfg.bandwidth = b.get<double>();
    } else {
      throw UsageError(where + ": bandwidth must be a number or \"mise-optimal\"");
    }
  }
  cfg.master_seed = merged.value("master_seed", std::uint64_t{1});
  if (seed_override) cfg.master_seed = *seed_override;
  return cfg;
}

// ---------------------------------------------------------------------------

struct CommonFlags {
  std::string kernel = "fan";
  double noise_sd = 0.0;
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool need_sd = true)
{
  cmd->add_option("--kernel", flags.kernel, "Kernel name: sinc | fan | wand")
    ->check(CLI::IsMember({"sinc", "fan", "wand"}));
  auto* sd = cmd->add_option("--noise-sd", flags.noise_sd,
                             "Gaussian noise standard deviation");
  if (need_sd) sd->required();
  cmd->add_option("--out", flags.out, "Output file (default: stdout)");
  cmd->add_option("--format", flags.format, "Output format")
    ->check(CLI::IsMember({"csv", "json"}));
}

void emit(const std::string& out_path, const std::string& payload)
{
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    auto f = open_out(out_path);
    f << payload;
  }
}

int run_estimate(const CommonFlags& flags, const std::string& data_path,
                 double bandwidth, const std::string& target_name,
                 const deconv::GridSpec& grid_flags, bool grid_given)
{
  const auto data = read_data_file(data_path);
  deconv::EstimatorConfig cfg;
  cfg.kernel = deconv::kernel_by_name(flags.kernel);
  cfg.noise = deconv::make_gaussian_noise(flags.noise_sd);
  if (bandwidth > 0.0) {
    cfg.bandwidth = bandwidth;
  } else if (!target_name.empty()) {
    cfg.bandwidth = deconv::mise_grid_search(cfg.kernel, cfg.noise,
                                             deconv::target_by_name(target_name),
                                             data.size())
                      .argmin_h;
  } else {
    throw UsageError(
      "estimate: provide --bandwidth, or --target for exact-MISE selection");
  }
  cfg.grid = grid_given ? grid_flags : deconv::default_grid(data, cfg);

  const auto grid = deconv::estimate_grid_fft(cfg, data);
  if (flags.format == "json") {
    emit(flags.out, deconv::to_json(grid) + "\n");
  } else {
    std::ostringstream s;
    s.precision(10);
    deconv::write_csv(grid, s);
    emit(flags.out, s.str());
  }
  return 0;
}

int run_mise(const CommonFlags& flags, const std::string& target_name,
             std::uint64_t n)
{
  const auto curve = deconv::mise_grid_search(
    deconv::kernel_by_name(flags.kernel),
    deconv::make_gaussian_noise(flags.noise_sd),
    deconv::target_by_name(target_name), n);
  if (flags.format == "json") {
    json j;
    j["h"] = curve.bandwidths;
    j["mise"] = curve.mise;
    j["argmin_h"] = curve.argmin_h;
    j["n"] = curve.n;
    emit(flags.out, j.dump(2) + "\n");
  } else {
    std::ostringstream s;
    s.precision(10);
    deconv::write_csv(curve, s);
    emit(flags.out, s.str());
  }
  std::cerr << "argmin h = " << curve.argmin_h << "\n";
  return 0;
}

int run_asym(const CommonFlags& flags, double h, std::uint64_t n)
{
  const auto kernel = deconv::kernel_by_name(flags.kernel);
  const auto noise = deconv::make_gaussian_noise(flags.noise_sd);
  const double sigma = deconv::theoretical_sd(kernel, noise, h, n);
  const double sigma_tilde = deconv::corrected_sd(kernel, noise, h, n);
  const double ratio = deconv::approximation_ratio(kernel, noise, h);
  if (flags.format == "json") {
    json j{{"h", h},
           {"n", n},
           {"sigma", sigma},
           {"sigma_tilde", sigma_tilde},
           {"ratio", ratio}};
    emit(flags.out, j.dump(2) + "\n");
  } else {
    std::ostringstream s;
    s.precision(10);
    s << "h,n,sigma,sigma_tilde,ratio\n"
      << h << ',' << n << ',' << sigma << ',' << sigma_tilde << ',' << ratio
      << '\n';
    emit(flags.out, s.str());
  }
  return 0;
}

int run_ratio(const CommonFlags& flags, double h_lo, double h_hi, double h_step)
{
  if (!(h_lo > 0.0) || !(h_lo < h_hi) || !(h_step > 0.0))
    throw UsageError("ratio: need 0 < h-lo < h-hi and h-step > 0");
  const auto kernel = deconv::kernel_by_name(flags.kernel);
  const auto noise = deconv::make_gaussian_noise(flags.noise_sd);
  std::ostringstream s;
  s.precision(10);
  s << "h,ratio\n";
  for (double h = h_lo; h <= h_hi + 1e-12; h += h_step) {
    s << h << ',';
    try {
      s << deconv::approximation_ratio(kernel, noise, h);
    } catch (const deconv::OverflowError&) {
      // overflow rows recorded as empty cells
    }
    s << '\n';
  }
  emit(flags.out, s.str());
  return 0;
}

int run_study(const std::string& config_path, const std::string& out_prefix,
              std::optional<std::uint64_t> seed_override)
{
  const json doc = load_config(config_path);
  std::vector<deconv::StudyReport> reports;
  const auto& scenarios = doc.at("scenarios");
  if (!scenarios.is_array() || scenarios.empty())
    throw UsageError(config_path + ": scenarios: expected a nonempty array");
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const std::string where =
      config_path + ": scenarios[" + std::to_string(i) + "]";
    const auto cfg =
      scenario_config(doc.at("defaults"), scenarios[i], seed_override, where);
    reports.push_back(deconv::run_study(cfg));
  }

  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto tag = out_prefix + "_" + std::to_string(i);
    open_out(tag + ".json") << deconv::to_json(reports[i]) << '\n';
    for (std::size_t p = 0; p < reports[i].points.size(); ++p) {
      const auto hist = deconv::histogram_export(reports[i], p, 20);
      open_out(tag + "_hist" + std::to_string(p) + ".csv")
        << deconv::histogram_csv(hist);
    }
  }
  open_out(out_prefix + "_table.csv") << deconv::table_render_csv(reports);
  open_out(out_prefix + "_fan_table.csv")
    << deconv::table_render_csv(reports, deconv::TableKind::fan_statistics);

  std::cout << deconv::table_render_text(reports);
  std::cout << "\nself-normalized statistic:\n"
            << deconv::table_render_text(reports,
                                         deconv::TableKind::fan_statistics);
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Deconvolution kernel density estimation for Gaussian "
               "measurement error: estimation, exact-MISE bandwidths, "
               "asymptotic normalizations and Monte Carlo studies"};
  app.require_subcommand(1);

  // estimate
  auto* estimate = app.add_subcommand("estimate", "FFT grid estimate from a data file");
  CommonFlags est_flags;
  std::string data_path, est_target;
  double est_bandwidth = 0.0;
  deconv::GridSpec grid_flags;
  add_common(estimate, est_flags);
  estimate->add_option("data", data_path, "Data file, one value per line")->required();
  estimate->add_option("--bandwidth", est_bandwidth, "Bandwidth h");
  estimate->add_option("--target", est_target,
                       "Target name for exact-MISE bandwidth selection");
  auto* glo = estimate->add_option("--grid-lo", grid_flags.lo, "Grid lower bound");
  estimate->add_option("--grid-hi", grid_flags.hi, "Grid upper bound");
  estimate->add_option("--grid-points", grid_flags.num_points,
                       "Grid size (power of two, >= 256)");

  // mise
  auto* mise = app.add_subcommand("mise", "Exact-MISE curve and grid minimizer");
  CommonFlags mise_flags;
  std::string mise_target;
  std::uint64_t mise_n = 50;
  add_common(mise, mise_flags);
  mise->add_option("--target", mise_target, "Target name")->required();
  mise->add_option("--n", mise_n, "Sample size");

  // asym
  auto* asym = app.add_subcommand("asym", "Theoretical and corrected standard deviations");
  CommonFlags asym_flags;
  double asym_h = 0.0;
  std::uint64_t asym_n = 50;
  add_common(asym, asym_flags);
  asym->add_option("--bandwidth", asym_h, "Bandwidth h")->required();
  asym->add_option("--n", asym_n, "Sample size");

  // ratio
  auto* ratio = app.add_subcommand("ratio", "Edge-integral accuracy ratio curve");
  CommonFlags ratio_flags;
  double h_lo = 0.02, h_hi = 1.0, h_step = 0.02;
  add_common(ratio, ratio_flags);
  ratio->add_option("--h-lo", h_lo, "Smallest bandwidth");
  ratio->add_option("--h-hi", h_hi, "Largest bandwidth");
  ratio->add_option("--h-step", h_step, "Bandwidth step");

  // study
  auto* study = app.add_subcommand("study", "Monte Carlo study from a TOML/JSON config");
  std::string config_path, study_out = "study";
  std::uint64_t study_seed = 0;
  bool seed_given = false;
  study->add_option("config", config_path, "Scenario config file")->required();
  study->add_option("--out", study_out, "Output file prefix");
  study->add_option("--seed", study_seed, "Master seed override")
    ->each([&](const std::string&) { seed_given = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*estimate)
      return run_estimate(est_flags, data_path, est_bandwidth, est_target,
                          grid_flags, glo->count() > 0);
    if (*mise) return run_mise(mise_flags, mise_target, mise_n);
    if (*asym) return run_asym(asym_flags, asym_h, asym_n);
    if (*ratio) return run_ratio(ratio_flags, h_lo, h_hi, h_step);
    if (*study)
      return run_study(config_path, study_out,
                       seed_given ? std::optional<std::uint64_t>(study_seed)
                                  : std::nullopt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const deconv::OverflowError& e) {
    std::cerr << "numeric error: " << e.what()
              << " (exponent " << e.exponent() << ")\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
