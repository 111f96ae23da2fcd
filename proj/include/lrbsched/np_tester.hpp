#ifndef LRBSCHED_NP_TESTER_HPP
#define LRBSCHED_NP_TESTER_HPP

// Neyman-Pearson statistics for scheduled (and possibly attacked)
// observations, plus the two-step Monte Carlo procedure: calibrate ln k_N
// from simulated null statistics, then estimate the error probabilities.
//
// Randomness is keyed by (phase, N, trial, role), so every trial is
// reproducible on its own and schedulers run on the same seed share their
// sensor noise.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lrbsched/channel_simulator.hpp"
#include "lrbsched/detection_model.hpp"
#include "lrbsched/errors.hpp"
#include "lrbsched/exponent_analysis.hpp"
#include "lrbsched/rng.hpp"

namespace lrbsched {

/// Running log-likelihood-ratio statistic after n ticks.
struct TestStatistic {
  double value = 0.0;
  std::int64_t n = 0;
};

/// Decision threshold ln k; the statistic rejects H0 when it exceeds it.
class TestThreshold {
 public:
  explicit TestThreshold(double log_k) : log_k_(log_k) {
    detail::require_domain(std::isfinite(log_k), "TestThreshold: ln k must be finite");
  }
  [[nodiscard]] double log_k() const noexcept { return log_k_; }

 private:
  double log_k_;
};

enum class Decision { kAcceptH0, kRejectH0 };

/// Adds delta*gamma*[-(theta1^2 - theta0^2)/(2 sigma2) + (theta1 - theta0) y / sigma2].
inline TestStatistic update_statistic(TestStatistic stat, const DiscriminationOutcome& outcome,
                                      const HypothesisPair& pair) {
  ++stat.n;
  if (outcome.gamma && outcome.delta && outcome.recovered) {
    stat.value += pair.llr_offset() + pair.llr_slope() * *outcome.recovered;
  }
  return stat;
}

/// One-pass evaluation of the same statistic as
/// offset * sum(delta gamma) + slope * sum(delta gamma y).
inline TestStatistic batch_statistic(std::span<const DiscriminationOutcome> outcomes,
                                     const HypothesisPair& pair) {
  double count = 0.0;
  double sum_y = 0.0;
  for (const auto& o : outcomes) {
    if (o.gamma && o.delta && o.recovered) {
      count += 1.0;
      sum_y += *o.recovered;
    }
  }
  return {pair.llr_offset() * count + pair.llr_slope() * sum_y,
          static_cast<std::int64_t>(outcomes.size())};
}

/// Reject iff value > ln k; equality accepts.
inline Decision decide(const TestStatistic& stat, const TestThreshold& threshold) noexcept {
  return stat.value > threshold.log_k() ? Decision::kRejectH0 : Decision::kAcceptH0;
}

/// Everything a Monte Carlo trial needs besides its random stream. No attack
/// means a secure channel (delta = gamma).
struct SimulationSetup {
  HypothesisPair pair;
  SchedulerSpec scheduler;
  std::optional<AttackModel> attack;
};

inline void validate_setup(const SimulationSetup& setup) {
  if (setup.attack && std::holds_alternative<RandomScheduler>(setup.scheduler)) {
    throw UsageError("random scheduler cannot be combined with an attack model");
  }
}

enum class McPhase : std::uint64_t { kCalibration = 1, kTypeTwo = 2, kTypeOne = 3 };

namespace detail {

enum class StreamRole : std::uint64_t { kSensor = 1, kChannel = 2, kAttacker = 3 };

inline RngStream trial_stream(std::uint64_t seed, McPhase phase, int n, std::int64_t trial,
                              StreamRole role) {
  return {seed, RngStream::substream_index({static_cast<std::uint64_t>(phase),
                                            static_cast<std::uint64_t>(n),
                                            static_cast<std::uint64_t>(trial),
                                            static_cast<std::uint64_t>(role)})};
}

}  // namespace detail

struct TrialResult {
  TestStatistic statistic;
  std::int64_t transmissions = 0;
};

/// Runs N ticks at true mean `theta` and accumulates the statistic.
inline TrialResult simulate_trial(const SimulationSetup& setup, double theta, int n,
                                  std::uint64_t seed, McPhase phase, std::int64_t trial) {
  auto sensor = detail::trial_stream(seed, phase, n, trial, detail::StreamRole::kSensor);
  auto channel = detail::trial_stream(seed, phase, n, trial, detail::StreamRole::kChannel);
  auto attacker = detail::trial_stream(seed, phase, n, trial, detail::StreamRole::kAttacker);
  TrialResult result;
  for (int i = 0; i < n; ++i) {
    const auto sample = generate_sample(sensor, theta, setup.pair);
    const auto injected = setup.attack ? attacker_inject(attacker, *setup.attack) : std::nullopt;
    const auto obs = transmit(sample, setup.scheduler, injected, channel);
    const auto outcome = setup.attack ? discriminate(obs, setup.scheduler) : secure_outcome(obs);
    result.statistic = update_statistic(result.statistic, outcome, setup.pair);
    if (obs.gamma()) ++result.transmissions;
  }
  return result;
}

/// Per-N thresholds ln k_N from the first calibration step.
class CalibrationResult {
 public:
  CalibrationResult(std::map<int, double> log_k, std::int64_t sample_count, double significance)
      : log_k_(std::move(log_k)), sample_count_(sample_count), significance_(significance) {
    detail::require_usage(sample_count >= 1, "CalibrationResult: sample count must be >= 1");
    detail::require_usage(significance > 0.0 && significance < 0.5,
                          "CalibrationResult: significance must lie in (0, 0.5)");
  }

  [[nodiscard]] const std::map<int, double>& log_k() const noexcept { return log_k_; }
  [[nodiscard]] std::int64_t sample_count() const noexcept { return sample_count_; }
  [[nodiscard]] double significance() const noexcept { return significance_; }

  [[nodiscard]] TestThreshold threshold(int n) const {
    const auto it = log_k_.find(n);
    if (it == log_k_.end()) {
      throw UsageError("no calibrated threshold for N = " + std::to_string(n));
    }
    return TestThreshold(it->second);
  }

  friend bool operator==(const CalibrationResult&, const CalibrationResult&) = default;

 private:
  std::map<int, double> log_k_;
  std::int64_t sample_count_;
  double significance_;
};

/// 1-based rank of the order statistic used as ln k: ceil(S (1 - alpha)).
inline std::int64_t calibration_rank(std::int64_t sample_count, double significance) {
  // The small offset keeps products such as 5000 * 0.95 from rounding up.
  const double target = static_cast<double>(sample_count) * (1.0 - significance);
  auto rank = static_cast<std::int64_t>(std::ceil(target - 1e-9));
  return std::clamp<std::int64_t>(rank, 1, sample_count);
}

/// Smallest x with empirical F(x) >= 1 - alpha, i.e. the ceil(S(1-alpha))-th
/// order statistic of `values` (reordered in place).
inline double empirical_upper_quantile(std::span<double> values, double significance) {
  detail::require_usage(!values.empty(), "empirical_upper_quantile: no values");
  const auto rank = calibration_rank(static_cast<std::int64_t>(values.size()), significance);
  auto nth = values.begin() + (rank - 1);
  std::nth_element(values.begin(), nth, values.end());
  return *nth;
}

inline void validate_mc_parameters(std::int64_t sample_count, double significance) {
  detail::require_usage(sample_count >= 100, "sample count S must be >= 100");
  detail::require_usage(significance > 0.0 && significance < 0.5,
                        "significance must lie in (0, 0.5)");
}

/// Step one: S null-hypothesis statistics per N, ln k_N from their upper
/// (1 - alpha) order statistic.
inline CalibrationResult calibrate_threshold(const SimulationSetup& setup,
                                             std::span<const int> n_list,
                                             std::int64_t sample_count, double significance,
                                             std::uint64_t seed) {
  validate_setup(setup);
  validate_mc_parameters(sample_count, significance);
  detail::require_usage(!n_list.empty(), "calibrate_threshold: empty N list");
  std::map<int, double> log_k;
  std::vector<double> values(static_cast<std::size_t>(sample_count));
  for (const int n : n_list) {
    detail::require_usage(n >= 1, "calibrate_threshold: every N must be >= 1");
    for (std::int64_t s = 0; s < sample_count; ++s) {
      values[static_cast<std::size_t>(s)] =
          simulate_trial(setup, setup.pair.theta0(), n, seed, McPhase::kCalibration, s)
              .statistic.value;
    }
    log_k[n] = empirical_upper_quantile(values, significance);
  }
  return {std::move(log_k), sample_count, significance};
}

struct ErrorCurveRow {
  int n = 0;
  double log_k = 0.0;
  double type1 = 0.0;
  double type2 = 0.0;
  double se_type1 = 0.0;
  double se_type2 = 0.0;
  double transmissions_mean = 0.0;  // under H1
  bool type2_zero = false;          // no accepting trial: beta reported as 0
};

struct ErrorCurve {
  std::vector<ErrorCurveRow> rows;
  std::int64_t sample_count = 0;
};

inline double binomial_se(double p, std::int64_t trials) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

/// Step two: S fresh runs under theta1 per N give beta_N; when
/// `with_type1` is set, S fresh runs under theta0 give the realized Type I
/// error of the calibrated threshold.
inline ErrorCurve estimate_errors(const SimulationSetup& setup,
                                  const CalibrationResult& calibration,
                                  std::span<const int> n_list, std::int64_t sample_count,
                                  std::uint64_t seed, bool with_type1 = true) {
  validate_setup(setup);
  detail::require_usage(sample_count >= 1, "estimate_errors: sample count must be >= 1");
  ErrorCurve curve;
  curve.sample_count = sample_count;
  const auto trials = static_cast<double>(sample_count);
  for (const int n : n_list) {
    detail::require_usage(n >= 0, "estimate_errors: N must be >= 0");
    const auto threshold = calibration.threshold(n);
    std::int64_t accepts = 0;
    std::int64_t transmissions = 0;
    for (std::int64_t s = 0; s < sample_count; ++s) {
      const auto r = simulate_trial(setup, setup.pair.theta1(), n, seed, McPhase::kTypeTwo, s);
      if (decide(r.statistic, threshold) == Decision::kAcceptH0) ++accepts;
      transmissions += r.transmissions;
    }
    std::int64_t rejects = 0;
    if (with_type1) {
      for (std::int64_t s = 0; s < sample_count; ++s) {
        const auto r = simulate_trial(setup, setup.pair.theta0(), n, seed, McPhase::kTypeOne, s);
        if (decide(r.statistic, threshold) == Decision::kRejectH0) ++rejects;
      }
    }
    ErrorCurveRow row;
    row.n = n;
    row.log_k = threshold.log_k();
    row.type2 = static_cast<double>(accepts) / trials;
    row.se_type2 = binomial_se(row.type2, sample_count);
    row.type2_zero = accepts == 0;
    row.transmissions_mean = static_cast<double>(transmissions) / trials;
    if (with_type1) {
      row.type1 = static_cast<double>(rejects) / trials;
      row.se_type1 = binomial_se(row.type1, sample_count);
    } else {
      row.type1 = std::nan("");
      row.se_type1 = std::nan("");
    }
    curve.rows.push_back(row);
  }
  return curve;
}

struct SteinSlope {
  int n;
  double type2;
  double slope;  // -ln(beta_N) / N
};

/// Empirical decay rate at the largest N whose beta_N rests on at least
/// `min_accepts` accepting trials; nullopt if no row qualifies.
inline std::optional<SteinSlope> stein_slope(const ErrorCurve& curve, int min_accepts = 10) {
  std::optional<SteinSlope> best;
  const double floor =
      static_cast<double>(min_accepts) / static_cast<double>(curve.sample_count);
  for (const auto& row : curve.rows) {
    if (row.n < 1 || row.type2 < floor || row.type2 <= 0.0) continue;
    if (!best || row.n > best->n) best = SteinSlope{row.n, row.type2, -std::log(row.type2) / row.n};
  }
  return best;
}

}  // namespace lrbsched

#endif  // LRBSCHED_NP_TESTER_HPP
