#ifndef LRBSCHED_EXPONENT_ANALYSIS_HPP
#define LRBSCHED_EXPONENT_ANALYSIS_HPP

// Closed-form Type II error exponents (relative entropies, in nats per
// sample) of the scheduled observation laws, with and without injection
// attacks.

#include <algorithm>
#include <cmath>
#include <string>

#include "lrbsched/detection_model.hpp"
#include "lrbsched/errors.hpp"
#include "lrbsched/gaussian_numerics.hpp"

namespace lrbsched {

/// Non-negative, finite relative entropy D(P0 || P1) in nats per sample.
class ErrorExponent {
 public:
  explicit ErrorExponent(double value) : value_(value) {
    detail::require_domain(std::isfinite(value) && value >= 0.0,
                           "ErrorExponent: value must be finite and >= 0");
  }
  [[nodiscard]] double value() const noexcept { return value_; }

  friend auto operator<=>(const ErrorExponent&, const ErrorExponent&) = default;

 private:
  double value_;
};

/// Each tick the adversary injects, with probability `intensity`, one
/// deceptive payload q ~ N(q_mean, q_var).
class AttackModel {
 public:
  AttackModel(double intensity, double q_mean, double q_var)
      : intensity_(intensity), q_mean_(q_mean), q_var_(q_var) {
    detail::require_domain(intensity >= 0.0 && intensity <= 1.0,
                           "AttackModel: intensity must lie in [0, 1]");
    detail::require_domain(std::isfinite(q_mean), "AttackModel: q_mean must be finite");
    detail::require_domain(q_var > 0.0 && std::isfinite(q_var), "AttackModel: requires q_var > 0");
  }

  /// q drawn from the alternative-hypothesis law N(theta1, sigma2).
  static AttackModel mimicking_alternative(double intensity, const HypothesisPair& pair) {
    return {intensity, pair.theta1(), pair.sigma2()};
  }

  [[nodiscard]] double intensity() const noexcept { return intensity_; }
  [[nodiscard]] double q_mean() const noexcept { return q_mean_; }
  [[nodiscard]] double q_var() const noexcept { return q_var_; }
  [[nodiscard]] double q_sigma() const noexcept { return std::sqrt(q_var_); }

  friend bool operator==(const AttackModel&, const AttackModel&) = default;

 private:
  double intensity_;
  double q_mean_;
  double q_var_;
};

namespace detail {

// Rounding in the closed form can leave a true zero slightly negative.
inline ErrorExponent clamp_rounding(double value, double scale) {
  if (value < 0.0 && value >= -1e-12 * std::max(1.0, scale)) value = 0.0;
  return ErrorExponent(value);
}

}  // namespace detail

/// L1(a, b) = -(dtheta/sigma2) * M(a, b) + ((theta1^2 - theta0^2)/(2 sigma2)) * R_theta0,
/// where M is the first moment of N(theta0, sigma2) over the transmit region.
/// The gamma = 0 atom contributes nothing because the censoring probability
/// is the same under both hypotheses.
inline ErrorExponent lrb_exponent(const HypothesisPair& pair, const LrbScheduler& sched) {
  const double moment =
      censored_region_first_moment(sched.a(), sched.b(), pair.theta0(), pair.sigma());
  const double rate0 = transmission_rate(sched, pair.theta0(), pair);
  const double quad = (pair.theta1() * pair.theta1() - pair.theta0() * pair.theta0()) /
                      (2.0 * pair.sigma2());
  const double value = -pair.llr_slope() * moment + quad * rate0;
  return detail::clamp_rounding(value, std::abs(quad));
}

/// Full-measurement exponent (theta1 - theta0)^2 / (2 sigma2).
inline ErrorExponent full_exponent(const HypothesisPair& pair) {
  return ErrorExponent(pair.separation() * pair.separation() / (2.0 * pair.sigma2()));
}

/// Random scheduler at rate R: linear in R.
inline ErrorExponent random_exponent(const HypothesisPair& pair, double rate) {
  detail::require_domain(rate >= 0.0 && rate <= 1.0, "random_exponent: rate must lie in [0, 1]");
  return ErrorExponent(full_exponent(pair).value() * rate);
}

/// Probability that a transmitted measurement survives discrimination:
/// eta = 1 - P * Pr{q in U}.
inline double attack_eta(const LrbScheduler& sched, const HypothesisPair& /*pair*/,
                         const AttackModel& attack) {
  const double q_in_region = detail::tails_mass((sched.a() - attack.q_mean()) / attack.q_sigma(),
                                                (sched.b() - attack.q_mean()) / attack.q_sigma());
  return 1.0 - attack.intensity() * q_in_region;
}

/// Exponent under attack: eta * L1(a, b).
inline ErrorExponent attacked_exponent(const HypothesisPair& pair, const LrbScheduler& sched,
                                       const AttackModel& attack) {
  return ErrorExponent(attack_eta(sched, pair, attack) * lrb_exponent(pair, sched).value());
}

/// Approximate number of samples n = ln(1/delta) / D for a Type II error of
/// delta. Not rounded.
inline double sample_complexity(ErrorExponent exponent, double delta) {
  detail::require_domain(delta > 0.0 && delta <= 1.0, "sample_complexity: delta must lie in (0, 1]");
  if (exponent.value() == 0.0) {
    throw InfiniteSamplesError("sample_complexity: zero exponent needs infinitely many samples");
  }
  return std::log(1.0 / delta) / exponent.value();
}

}  // namespace lrbsched

#endif  // LRBSCHED_EXPONENT_ANALYSIS_HPP
