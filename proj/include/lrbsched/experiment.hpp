#ifndef LRBSCHED_EXPERIMENT_HPP
#define LRBSCHED_EXPERIMENT_HPP

// JSON experiment configuration and the table-producing runs behind the CLI
// subcommands. Unknown config fields are rejected.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lrbsched/csv.hpp"
#include "lrbsched/detection_model.hpp"
#include "lrbsched/errors.hpp"
#include "lrbsched/exponent_analysis.hpp"
#include "lrbsched/np_tester.hpp"
#include "lrbsched/threshold_solver.hpp"

namespace lrbsched {

/// theta1 for theta0 = 0 at the given SNR = 10 log10(theta1^2 / sigma2) dB.
inline double snr_to_theta1(double snr_db, double sigma2) {
  detail::require_domain(sigma2 > 0.0 && std::isfinite(sigma2), "snr_to_theta1: requires sigma2 > 0");
  detail::require_domain(std::isfinite(snr_db), "snr_to_theta1: SNR must be finite");
  return std::sqrt(sigma2 * std::pow(10.0, snr_db / 10.0));
}

/// One Monte Carlo series: a scheduler at budget `rate`, optionally attacked.
struct SeriesSpec {
  enum class Kind { kLrb, kRandom, kFull };
  Kind kind = Kind::kLrb;
  double rate = 1.0;
  double attack_intensity = 0.0;

  friend bool operator==(const SeriesSpec&, const SeriesSpec&) = default;
};

inline const char* series_label(SeriesSpec::Kind kind) {
  switch (kind) {
    case SeriesSpec::Kind::kLrb: return "lrb";
    case SeriesSpec::Kind::kRandom: return "random";
    case SeriesSpec::Kind::kFull: return "full";
  }
  return "?";
}

struct ExperimentConfig {
  double theta0 = 0.0;
  double theta1 = 1.0;
  double sigma2 = 1.0;
  std::optional<double> snr_db;
  std::vector<double> rates;
  std::vector<double> attack_intensities;
  std::optional<double> q_mean;
  std::optional<double> q_var;
  std::vector<SeriesSpec> series;
  bool include_full_baseline = true;
  std::vector<int> n_list;
  std::int64_t samples = 5000;
  std::optional<std::int64_t> calibration_samples;
  double significance = 0.05;
  std::optional<std::uint64_t> seed;
  std::string output;

  [[nodiscard]] HypothesisPair pair() const { return {theta0, theta1, sigma2}; }

  /// Attack at the given intensity with the configured deceptive law
  /// (default: the H1 law N(theta1, sigma2)).
  [[nodiscard]] AttackModel attack(double intensity) const {
    return {intensity, q_mean.value_or(theta1), q_var.value_or(sigma2)};
  }
};

namespace config_detail {

using nlohmann::json;

inline const std::set<std::string>& known_fields() {
  static const std::set<std::string> fields = {
      "theta0", "theta1", "snr_db", "sigma2", "rates", "rate_step", "attack_intensities",
      "q_mean", "q_var", "scheduler", "attack", "series", "include_full_baseline", "n_list",
      "samples", "calibration_samples", "significance", "seed", "output"};
  return fields;
}

[[noreturn]] inline void field_error(const std::string& field, const std::string& what) {
  throw UsageError("config field '" + field + "': " + what);
}

inline double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) field_error(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) field_error(field, "must be finite");
  return v;
}

inline std::int64_t get_integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) field_error(field, "expected an integer");
  return j.get<std::int64_t>();
}

inline std::vector<double> get_number_list(const json& j, const std::string& field) {
  if (!j.is_array()) field_error(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(get_number(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                           const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) {
      field_error(where.empty() ? item.key() : where + "." + item.key(), "unknown field");
    }
  }
}

inline SeriesSpec parse_series(const json& j, const std::string& where) {
  if (!j.is_object()) field_error(where, "expected an object");
  reject_unknown(j, {"scheduler", "rate", "attack_intensity"}, where);
  SeriesSpec s;
  if (!j.contains("scheduler") || !j["scheduler"].is_string()) {
    field_error(where + ".scheduler", "expected one of \"lrb\", \"random\", \"full\"");
  }
  const auto kind = j["scheduler"].get<std::string>();
  if (kind == "lrb") {
    s.kind = SeriesSpec::Kind::kLrb;
  } else if (kind == "random") {
    s.kind = SeriesSpec::Kind::kRandom;
  } else if (kind == "full") {
    s.kind = SeriesSpec::Kind::kFull;
  } else {
    field_error(where + ".scheduler", "expected one of \"lrb\", \"random\", \"full\"");
  }
  if (s.kind == SeriesSpec::Kind::kFull) {
    if (j.contains("rate")) field_error(where + ".rate", "not allowed for the full baseline");
    s.rate = 1.0;
  } else {
    if (!j.contains("rate")) field_error(where + ".rate", "required");
    s.rate = get_number(j["rate"], where + ".rate");
  }
  if (j.contains("attack_intensity")) {
    s.attack_intensity = get_number(j["attack_intensity"], where + ".attack_intensity");
  }
  return s;
}

// Single-series form: "scheduler": {"type": "lrb", "rate": R} or
// {"type": "random", "p": p}, plus an optional "attack" object.
inline SeriesSpec parse_single_scheduler(const json& sched, const json* attack,
                                         ExperimentConfig& cfg) {
  if (!sched.is_object()) field_error("scheduler", "expected an object");
  if (!sched.contains("type") || !sched["type"].is_string()) {
    field_error("scheduler.type", "expected \"lrb\" or \"random\"");
  }
  SeriesSpec s;
  const auto type = sched["type"].get<std::string>();
  if (type == "lrb") {
    reject_unknown(sched, {"type", "rate"}, "scheduler");
    if (!sched.contains("rate")) field_error("scheduler.rate", "required");
    s.kind = SeriesSpec::Kind::kLrb;
    s.rate = get_number(sched["rate"], "scheduler.rate");
  } else if (type == "random") {
    reject_unknown(sched, {"type", "p"}, "scheduler");
    if (!sched.contains("p")) field_error("scheduler.p", "required");
    s.kind = SeriesSpec::Kind::kRandom;
    s.rate = get_number(sched["p"], "scheduler.p");
  } else {
    field_error("scheduler.type", "expected \"lrb\" or \"random\"");
  }
  if (attack != nullptr) {
    if (!attack->is_object()) field_error("attack", "expected an object");
    reject_unknown(*attack, {"intensity", "q_mean", "q_var"}, "attack");
    if (!attack->contains("intensity")) field_error("attack.intensity", "required");
    s.attack_intensity = get_number((*attack)["intensity"], "attack.intensity");
    if (attack->contains("q_mean")) cfg.q_mean = get_number((*attack)["q_mean"], "attack.q_mean");
    if (attack->contains("q_var")) cfg.q_var = get_number((*attack)["q_var"], "attack.q_var");
  }
  return s;
}

inline void validate(const ExperimentConfig& cfg) {
  if (!(cfg.sigma2 > 0.0)) field_error("sigma2", "must be > 0");
  if (!(cfg.theta0 < cfg.theta1)) field_error("theta1", "must be greater than theta0");
  for (std::size_t i = 0; i < cfg.rates.size(); ++i) {
    const double r = cfg.rates[i];
    if (!(r > 0.0 && r <= 1.0)) field_error("rates[" + std::to_string(i) + "]", "must lie in (0, 1]");
  }
  for (std::size_t i = 0; i < cfg.attack_intensities.size(); ++i) {
    const double p = cfg.attack_intensities[i];
    if (!(p >= 0.0 && p <= 1.0)) {
      field_error("attack_intensities[" + std::to_string(i) + "]", "must lie in [0, 1]");
    }
  }
  if (cfg.q_var && !(*cfg.q_var > 0.0)) field_error("q_var", "must be > 0");
  for (std::size_t i = 0; i < cfg.series.size(); ++i) {
    const auto& s = cfg.series[i];
    const std::string where = "series[" + std::to_string(i) + "]";
    if (s.kind == SeriesSpec::Kind::kLrb && !(s.rate > 0.0 && s.rate <= 1.0)) {
      field_error(where + ".rate", "must lie in (0, 1]");
    }
    if (s.kind == SeriesSpec::Kind::kRandom && !(s.rate >= 0.0 && s.rate <= 1.0)) {
      field_error(where + ".rate", "must lie in [0, 1]");
    }
    if (!(s.attack_intensity >= 0.0 && s.attack_intensity <= 1.0)) {
      field_error(where + ".attack_intensity", "must lie in [0, 1]");
    }
    if (s.kind != SeriesSpec::Kind::kLrb && s.attack_intensity > 0.0) {
      field_error(where + ".attack_intensity",
                  "attacks are only supported with the lrb scheduler (discrimination protocol)");
    }
  }
  for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
    if (cfg.n_list[i] < 1) field_error("n_list[" + std::to_string(i) + "]", "must be >= 1");
  }
  if (cfg.samples < 100) field_error("samples", "must be >= 100");
  if (cfg.calibration_samples && *cfg.calibration_samples < 100) {
    field_error("calibration_samples", "must be >= 100");
  }
  if (!(cfg.significance > 0.0 && cfg.significance < 0.5)) {
    field_error("significance", "must lie in (0, 0.5)");
  }
}

}  // namespace config_detail

/// Parses and validates a config document. Throws UsageError naming the
/// offending field.
inline ExperimentConfig parse_config(const nlohmann::json& doc) {
  using config_detail::field_error;
  using config_detail::get_integer;
  using config_detail::get_number;
  if (!doc.is_object()) throw UsageError("config: top level must be a JSON object");
  config_detail::reject_unknown(doc, config_detail::known_fields(), "");

  ExperimentConfig cfg;
  if (doc.contains("sigma2")) cfg.sigma2 = get_number(doc["sigma2"], "sigma2");
  if (doc.contains("theta0")) cfg.theta0 = get_number(doc["theta0"], "theta0");
  const bool has_theta1 = doc.contains("theta1");
  const bool has_snr = doc.contains("snr_db");
  if (has_theta1 == has_snr) field_error("theta1", "exactly one of 'theta1' and 'snr_db' is required");
  if (has_theta1) {
    cfg.theta1 = get_number(doc["theta1"], "theta1");
  } else {
    cfg.snr_db = get_number(doc["snr_db"], "snr_db");
    if (cfg.theta0 != 0.0) field_error("theta0", "must be 0 when 'snr_db' is given");
    if (!(cfg.sigma2 > 0.0)) field_error("sigma2", "must be > 0");
    cfg.theta1 = snr_to_theta1(*cfg.snr_db, cfg.sigma2);
  }

  if (doc.contains("rates") && doc.contains("rate_step")) {
    field_error("rate_step", "give either 'rates' or 'rate_step', not both");
  }
  if (doc.contains("rates")) {
    cfg.rates = config_detail::get_number_list(doc["rates"], "rates");
    if (cfg.rates.empty()) field_error("rates", "must not be empty");
  } else {
    double step = 0.01;
    if (doc.contains("rate_step")) step = get_number(doc["rate_step"], "rate_step");
    if (!(step > 0.0 && step <= 1.0)) field_error("rate_step", "must lie in (0, 1]");
    const double count = std::round(1.0 / step);
    if (std::abs(count * step - 1.0) > 1e-9) field_error("rate_step", "must divide 1 evenly");
    cfg.rates = uniform_rate_grid(static_cast<int>(count));
  }

  if (doc.contains("attack_intensities")) {
    cfg.attack_intensities =
        config_detail::get_number_list(doc["attack_intensities"], "attack_intensities");
  }
  if (doc.contains("q_mean")) cfg.q_mean = get_number(doc["q_mean"], "q_mean");
  if (doc.contains("q_var")) cfg.q_var = get_number(doc["q_var"], "q_var");

  if (doc.contains("series") && doc.contains("scheduler")) {
    field_error("scheduler", "give either 'scheduler' or 'series', not both");
  }
  if (doc.contains("attack") && !doc.contains("scheduler")) {
    field_error("attack", "only valid together with 'scheduler'");
  }
  if (doc.contains("series")) {
    const auto& arr = doc["series"];
    if (!arr.is_array()) field_error("series", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      cfg.series.push_back(config_detail::parse_series(arr[i], "series[" + std::to_string(i) + "]"));
    }
  }
  if (doc.contains("scheduler")) {
    const nlohmann::json* attack = doc.contains("attack") ? &doc["attack"] : nullptr;
    cfg.series.push_back(config_detail::parse_single_scheduler(doc["scheduler"], attack, cfg));
  }
  if (doc.contains("include_full_baseline")) {
    if (!doc["include_full_baseline"].is_boolean()) field_error("include_full_baseline", "expected a boolean");
    cfg.include_full_baseline = doc["include_full_baseline"].get<bool>();
  }

  if (doc.contains("n_list")) {
    const auto& arr = doc["n_list"];
    if (!arr.is_array() || arr.empty()) field_error("n_list", "expected a non-empty array of integers");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto n = get_integer(arr[i], "n_list[" + std::to_string(i) + "]");
      if (n < 1 || n > 1000000) field_error("n_list[" + std::to_string(i) + "]", "must lie in [1, 1e6]");
      cfg.n_list.push_back(static_cast<int>(n));
    }
  } else {
    for (int n = 5; n <= 60; n += 5) cfg.n_list.push_back(n);
  }
  if (doc.contains("samples")) cfg.samples = get_integer(doc["samples"], "samples");
  if (doc.contains("calibration_samples")) {
    cfg.calibration_samples = get_integer(doc["calibration_samples"], "calibration_samples");
  }
  if (doc.contains("significance")) cfg.significance = get_number(doc["significance"], "significance");
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) field_error("seed", "expected a non-negative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("output")) {
    if (!doc["output"].is_string()) field_error("output", "expected a string");
    cfg.output = doc["output"].get<std::string>();
  }

  config_detail::validate(cfg);
  return cfg;
}

/// Parses JSON text; syntax errors carry line and column.
inline ExperimentConfig parse_config_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("config: invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

/// Columns: R, lrb_exponent, random_exponent, one attacked_exponent_p<P>
/// per configured intensity, a_star, b_star. Exponents in nats per sample.
inline CsvTable run_exponent_sweep(const ExperimentConfig& cfg) {
  detail::require_usage(!cfg.rates.empty(), "exponents: rate grid is empty");
  const auto pair = cfg.pair();
  std::vector<std::string> header = {"R", "lrb_exponent", "random_exponent"};
  for (const double p : cfg.attack_intensities) header.push_back("attacked_exponent_p" + format_double(p));
  header.emplace_back("a_star");
  header.emplace_back("b_star");
  CsvTable table(std::move(header));
  for (const double rate : cfg.rates) {
    const auto design = solve_optimal_thresholds(pair, RateConstraint(rate));
    std::vector<CsvCell> row = {rate, design.exponent.value(), random_exponent(pair, rate).value()};
    for (const double p : cfg.attack_intensities) {
      row.emplace_back(attacked_exponent(pair, design.scheduler, cfg.attack(p)).value());
    }
    row.emplace_back(design.scheduler.a());
    row.emplace_back(design.scheduler.b());
    table.add_row(std::move(row));
  }
  return table;
}

/// Optimal thresholds per rate with both achieved rates and the dominance gap.
inline CsvTable run_threshold_table(const ExperimentConfig& cfg) {
  detail::require_usage(!cfg.rates.empty(), "thresholds: rate grid is empty");
  const auto pair = cfg.pair();
  CsvTable table({"R", "a_star", "b_star", "half_width", "rate_theta0", "rate_theta1",
                  "lrb_exponent", "random_exponent", "dominance_gap"});
  for (const double rate : cfg.rates) {
    const auto design = solve_optimal_thresholds(pair, RateConstraint(rate));
    const SchedulerSpec spec = design.scheduler;
    const double l2 = random_exponent(pair, rate).value();
    table.add_row({rate, design.scheduler.a(), design.scheduler.b(), design.scheduler.half_width(),
                   transmission_rate(spec, pair.theta0(), pair),
                   transmission_rate(spec, pair.theta1(), pair), design.exponent.value(), l2,
                   design.exponent.value() - l2});
  }
  return table;
}

/// Scheduler and optional attack for one Monte Carlo series.
inline SimulationSetup make_setup(const ExperimentConfig& cfg, const SeriesSpec& series) {
  const auto pair = cfg.pair();
  std::optional<AttackModel> attack;
  if (series.attack_intensity > 0.0) attack = cfg.attack(series.attack_intensity);
  switch (series.kind) {
    case SeriesSpec::Kind::kRandom:
      return {pair, RandomScheduler(series.rate), attack};
    case SeriesSpec::Kind::kFull:
      return {pair, LrbScheduler::symmetric(pair, 0.0), attack};
    case SeriesSpec::Kind::kLrb:
      break;
  }
  return {pair, solve_optimal_thresholds(pair, RateConstraint(series.rate)).scheduler, attack};
}

/// Series actually simulated: the configured ones plus, unless disabled or
/// already present, the secure full-measurement baseline.
inline std::vector<SeriesSpec> effective_series(const ExperimentConfig& cfg) {
  auto series = cfg.series;
  const SeriesSpec baseline{SeriesSpec::Kind::kFull, 1.0, 0.0};
  if (cfg.include_full_baseline && std::find(series.begin(), series.end(), baseline) == series.end()) {
    series.push_back(baseline);
  }
  return series;
}

inline constexpr std::uint64_t kDefaultSeed = 1;

/// Two-step Monte Carlo for every series. Columns: N, scheduler, R,
/// attack_intensity, log_k, type1_hat, type2_hat, se_type2.
inline CsvTable run_mc_experiment(const ExperimentConfig& cfg) {
  const auto series = effective_series(cfg);
  detail::require_usage(!series.empty(), "simulate: no series configured");
  detail::require_usage(!cfg.n_list.empty(), "simulate: empty n_list");
  const std::uint64_t seed = cfg.seed.value_or(kDefaultSeed);
  const std::int64_t cal_samples = cfg.calibration_samples.value_or(cfg.samples);
  CsvTable table({"N", "scheduler", "R", "attack_intensity", "log_k", "type1_hat", "type2_hat",
                  "se_type2"});
  for (const auto& s : series) {
    const auto setup = make_setup(cfg, s);
    const auto calibration = calibrate_threshold(setup, cfg.n_list, cal_samples, cfg.significance, seed);
    const auto curve = estimate_errors(setup, calibration, cfg.n_list, cfg.samples, seed);
    for (const auto& row : curve.rows) {
      table.add_row({static_cast<std::int64_t>(row.n), std::string(series_label(s.kind)), s.rate,
                     s.attack_intensity, row.log_k, row.type1, row.type2, row.se_type2});
    }
  }
  return table;
}

/// Columns: intensity, best_rate, best_exponent.
inline CsvTable run_attack_optimum(const ExperimentConfig& cfg) {
  detail::require_usage(!cfg.attack_intensities.empty(), "attack-optimum: attack_intensities is empty");
  detail::require_usage(!cfg.rates.empty(), "attack-optimum: rate grid is empty");
  const auto pair = cfg.pair();
  CsvTable table({"intensity", "best_rate", "best_exponent"});
  for (const double p : cfg.attack_intensities) {
    const auto best = solve_optimal_rate_under_attack(pair, cfg.attack(p), cfg.rates);
    table.add_row({p, best.best_rate, best.best_exponent.value()});
  }
  return table;
}

}  // namespace lrbsched

#endif  // LRBSCHED_EXPERIMENT_HPP
