#ifndef LRBSCHED_DETECTION_MODEL_HPP
#define LRBSCHED_DETECTION_MODEL_HPP

// The Gaussian mean-shift testing problem, the two sensor-side schedulers and
// their censoring / transmission probabilities.

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>

#include "lrbsched/errors.hpp"
#include "lrbsched/gaussian_numerics.hpp"

namespace lrbsched {

/// H0: y ~ N(theta0, sigma2) versus H1: y ~ N(theta1, sigma2), theta0 < theta1.
class HypothesisPair {
 public:
  HypothesisPair(double theta0, double theta1, double sigma2)
      : theta0_(theta0), theta1_(theta1), sigma2_(sigma2), sigma_(std::sqrt(sigma2)) {
    detail::require_domain(std::isfinite(theta0) && std::isfinite(theta1),
                           "HypothesisPair: means must be finite");
    detail::require_domain(theta0 < theta1, "HypothesisPair: requires theta0 < theta1");
    detail::require_domain(sigma2 > 0.0 && std::isfinite(sigma2),
                           "HypothesisPair: requires sigma2 > 0");
  }

  [[nodiscard]] double theta0() const noexcept { return theta0_; }
  [[nodiscard]] double theta1() const noexcept { return theta1_; }
  [[nodiscard]] double sigma2() const noexcept { return sigma2_; }
  [[nodiscard]] double sigma() const noexcept { return sigma_; }
  [[nodiscard]] double midpoint() const noexcept { return 0.5 * (theta0_ + theta1_); }
  [[nodiscard]] double mean_sum() const noexcept { return theta0_ + theta1_; }
  [[nodiscard]] double separation() const noexcept { return theta1_ - theta0_; }

  /// Per-sample log-likelihood ratio ln(p1(y)/p0(y)) is slope() * y + offset().
  [[nodiscard]] double llr_slope() const noexcept { return (theta1_ - theta0_) / sigma2_; }
  [[nodiscard]] double llr_offset() const noexcept {
    return -(theta1_ * theta1_ - theta0_ * theta0_) / (2.0 * sigma2_);
  }

  friend bool operator==(const HypothesisPair&, const HypothesisPair&) = default;

 private:
  double theta0_;
  double theta1_;
  double sigma2_;
  double sigma_;
};

/// Censor y in the open interval (a, b), transmit on U = (-inf, a] U [b, inf).
/// Construction enforces a <= b and the symmetry a + b = theta0 + theta1.
class LrbScheduler {
 public:
  static constexpr double kSymmetryTolerance = 1e-12;

  LrbScheduler(double a, double b, const HypothesisPair& pair) : a_(a), b_(b) {
    detail::require_domain(std::isfinite(a) && std::isfinite(b),
                           "LrbScheduler: thresholds must be finite");
    detail::require_domain(a <= b, "LrbScheduler: requires a <= b");
    const double scale = std::max(1.0, std::abs(pair.theta0()) + std::abs(pair.theta1()));
    detail::require_domain(std::abs((a + b) - pair.mean_sum()) <= kSymmetryTolerance * scale,
                           "LrbScheduler: requires a + b = theta0 + theta1");
  }

  /// a = m - half_width, b = m + half_width around the midpoint m.
  static LrbScheduler symmetric(const HypothesisPair& pair, double half_width) {
    detail::require_domain(half_width >= 0.0 && std::isfinite(half_width),
                           "LrbScheduler: half width must be finite and >= 0");
    const double m = pair.midpoint();
    return {m - half_width, m + half_width, pair};
  }

  [[nodiscard]] double a() const noexcept { return a_; }
  [[nodiscard]] double b() const noexcept { return b_; }
  [[nodiscard]] double half_width() const noexcept { return 0.5 * (b_ - a_); }

  /// Membership in the closed transmit region U.
  [[nodiscard]] bool in_transmit_region(double y) const noexcept { return y <= a_ || y >= b_; }

  friend bool operator==(const LrbScheduler&, const LrbScheduler&) = default;

 private:
  double a_;
  double b_;
};

/// Transmit each sample independently with probability p.
class RandomScheduler {
 public:
  explicit RandomScheduler(double p) : p_(p) {
    detail::require_domain(p >= 0.0 && p <= 1.0, "RandomScheduler: requires 0 <= p <= 1");
  }
  [[nodiscard]] double p() const noexcept { return p_; }

  friend bool operator==(const RandomScheduler&, const RandomScheduler&) = default;

 private:
  double p_;
};

using SchedulerSpec = std::variant<LrbScheduler, RandomScheduler>;

/// g(y) = p1(y) / p0(y); strictly increasing in y.
inline double likelihood_ratio(double y, const HypothesisPair& pair) {
  detail::require_finite(y, "likelihood_ratio");
  return std::exp(pair.llr_slope() * y + pair.llr_offset());
}

/// Thresholds with g(a) = 1/alpha and g(b) = alpha.
inline LrbScheduler thresholds_from_alpha(double schedule_alpha, const HypothesisPair& pair) {
  detail::require_domain(schedule_alpha >= 1.0 && std::isfinite(schedule_alpha),
                         "thresholds_from_alpha: requires alpha >= 1");
  return LrbScheduler::symmetric(pair, std::log(schedule_alpha) / pair.llr_slope());
}

/// Scheduler bit: true (gamma = 1) iff y lies in U. Ties at a or b transmit.
inline bool lrb_decide(double y, const LrbScheduler& sched) {
  detail::require_finite(y, "lrb_decide");
  return sched.in_transmit_region(y);
}

/// P_theta{gamma = 0}.
inline double censoring_probability(const SchedulerSpec& sched, double theta,
                                    const HypothesisPair& pair) {
  detail::require_finite(theta, "censoring_probability");
  if (const auto* lrb = std::get_if<LrbScheduler>(&sched)) {
    return detail::interval_mass((lrb->a() - theta) / pair.sigma(),
                                 (lrb->b() - theta) / pair.sigma());
  }
  return 1.0 - std::get<RandomScheduler>(sched).p();
}

/// R_theta = P_theta{gamma = 1}. For the LRB variant the two tails are summed
/// directly rather than subtracting the censoring mass from one.
inline double transmission_rate(const SchedulerSpec& sched, double theta,
                                const HypothesisPair& pair) {
  detail::require_finite(theta, "transmission_rate");
  if (const auto* lrb = std::get_if<LrbScheduler>(&sched)) {
    return detail::tails_mass((lrb->a() - theta) / pair.sigma(),
                              (lrb->b() - theta) / pair.sigma());
  }
  return std::get<RandomScheduler>(sched).p();
}

/// Unnormalized truncated density N(y; theta, sigma2) * 1{y in U}; its
/// integral is R_theta.
inline double truncated_pdf(double y, double theta, const HypothesisPair& pair,
                            const LrbScheduler& sched) {
  detail::require_finite(y, "truncated_pdf");
  detail::require_finite(theta, "truncated_pdf");
  if (!sched.in_transmit_region(y)) return 0.0;
  return detail::density((y - theta) / pair.sigma()) / pair.sigma();
}

}  // namespace lrbsched

#endif  // LRBSCHED_DETECTION_MODEL_HPP
