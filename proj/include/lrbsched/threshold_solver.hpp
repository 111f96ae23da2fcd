#ifndef LRBSCHED_THRESHOLD_SOLVER_HPP
#define LRBSCHED_THRESHOLD_SOLVER_HPP

// Optimal LRB thresholds under a transmission-rate budget, and the rate that
// maximizes the attacked exponent.
//
// With a = m - t and b = m + t (m the midpoint of the two means) the
// censoring probability is identical under theta0 and theta1, so the two
// rate constraints collapse into the single scalar equation
//   Phi((m + t - theta0)/sigma) - Phi((m - t - theta0)/sigma) = 1 - R
// whose left side is increasing in t. L1 increases as t shrinks, so the
// optimum sits on the constraint boundary.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "lrbsched/detection_model.hpp"
#include "lrbsched/errors.hpp"
#include "lrbsched/exponent_analysis.hpp"
#include "lrbsched/gaussian_numerics.hpp"

namespace lrbsched {

/// Upper bound R on the scheduled transmission rate, 0 < R <= 1.
class RateConstraint {
 public:
  explicit RateConstraint(double rate) : rate_(rate) {
    detail::require_domain(rate > 0.0 && rate <= 1.0, "RateConstraint: rate must lie in (0, 1]");
  }
  [[nodiscard]] double rate() const noexcept { return rate_; }

 private:
  double rate_;
};

struct OptimalDesign {
  LrbScheduler scheduler;
  double achieved_rate;
  ErrorExponent exponent;
};

struct AttackOptimum {
  double best_rate;
  ErrorExponent best_exponent;
};

namespace solver {

inline constexpr int kMaxBisection = 200;
inline constexpr double kRateTolerance = 1e-12;
inline constexpr double kAchievedRateTolerance = 1e-10;

// Transmission rate under theta0 as a function of the standardized
// half-width u = t / sigma; d is the standardized distance from theta0 to m.
inline double standardized_rate(double d, double u) noexcept {
  return detail::tails_mass(d - u, d + u);
}

/// Standardized half-width u >= 0 with standardized_rate(d, u) = rate.
inline double solve_half_width(double d, double rate) {
  if (rate >= 1.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  int doublings = 0;
  while (standardized_rate(d, hi) > rate) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 64) throw NumericError("solve_optimal_thresholds: cannot bracket the root");
  }
  for (int iter = 0; iter < kMaxBisection; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (standardized_rate(d, mid) > rate) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double err_lo = std::abs(standardized_rate(d, lo) - rate);
  const double err_hi = std::abs(standardized_rate(d, hi) - rate);
  const double u = err_lo <= err_hi ? lo : hi;
  if (std::min(err_lo, err_hi) > kRateTolerance) {
    throw NumericError("solve_optimal_thresholds: bisection did not reach the rate tolerance");
  }
  return u;
}

}  // namespace solver

/// Thresholds (a*, b*) = (m - t, m + t) maximizing L1 subject to R_theta <= R
/// for theta in {theta0, theta1}.
inline OptimalDesign solve_optimal_thresholds(const HypothesisPair& pair,
                                              RateConstraint constraint) {
  const double d = (pair.midpoint() - pair.theta0()) / pair.sigma();
  const double u = solver::solve_half_width(d, constraint.rate());
  const auto sched = LrbScheduler::symmetric(pair, u * pair.sigma());
  const double achieved = transmission_rate(sched, pair.theta0(), pair);
  if (std::abs(achieved - constraint.rate()) > solver::kAchievedRateTolerance) {
    throw NumericError("solve_optimal_thresholds: achieved rate misses the constraint");
  }
  return {sched, achieved, lrb_exponent(pair, sched)};
}

/// {1/count, 2/count, ..., 1}.
inline std::vector<double> uniform_rate_grid(int count) {
  detail::require_usage(count >= 1, "uniform_rate_grid: count must be >= 1");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (int k = 1; k <= count; ++k) grid.push_back(static_cast<double>(k) / count);
  return grid;
}

/// Grid search for the rate maximizing eta(R) * L1(a*(R), b*(R)). Ties go to
/// the smaller rate.
inline AttackOptimum solve_optimal_rate_under_attack(const HypothesisPair& pair,
                                                     const AttackModel& attack,
                                                     std::span<const double> rate_grid) {
  detail::require_usage(!rate_grid.empty(), "solve_optimal_rate_under_attack: empty rate grid");
  bool have_best = false;
  double best_rate = 0.0;
  double best_value = 0.0;
  for (const double rate : rate_grid) {
    detail::require_usage(rate > 0.0 && rate <= 1.0,
                          "solve_optimal_rate_under_attack: grid rates must lie in (0, 1]");
    const auto design = solve_optimal_thresholds(pair, RateConstraint(rate));
    const double value = attacked_exponent(pair, design.scheduler, attack).value();
    if (!have_best || value > best_value || (value == best_value && rate < best_rate)) {
      have_best = true;
      best_rate = rate;
      best_value = value;
    }
  }
  return {best_rate, ErrorExponent(best_value)};
}

/// L1(a*, b*) - L2 at the same rate budget; positive for 0 < R < 1.
inline double dominance_gap(const HypothesisPair& pair, double rate) {
  const auto design = solve_optimal_thresholds(pair, RateConstraint(rate));
  return design.exponent.value() - random_exponent(pair, rate).value();
}

}  // namespace lrbsched

#endif  // LRBSCHED_THRESHOLD_SOLVER_HPP
