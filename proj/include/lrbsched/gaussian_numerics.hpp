#ifndef LRBSCHED_GAUSSIAN_NUMERICS_HPP
#define LRBSCHED_GAUSSIAN_NUMERICS_HPP

// Standard-normal pdf / cdf / quantile and the first moment of a Gaussian
// restricted to the two tails (-inf, a] and [b, inf).
//
// The cdf is evaluated through erfc on the side of zero where no
// cancellation occurs: Phi(x) = erfc(-x/sqrt2)/2 for x < 0 and
// Phi(x) = 1 - erfc(x/sqrt2)/2 otherwise. Upper tails and interval masses
// have dedicated entry points so callers never form 1 - Phi(x) for large x.

#include <algorithm>
#include <cmath>
#include <string>

#include "lrbsched/errors.hpp"

namespace lrbsched {

/// A finite standardized coordinate (y - theta) / sigma.
class StdNormalValue {
 public:
  explicit StdNormalValue(double x) : x_(x) {
    detail::require_domain(std::isfinite(x), "standardized value must be finite");
  }
  [[nodiscard]] double value() const noexcept { return x_; }

 private:
  double x_;
};

namespace detail {

inline constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;
inline constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

inline void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) throw DomainError(std::string(who) + ": non-finite argument");
}

// Lower tail without argument checks; used on hot paths after validation.
inline double lower_tail(double x) noexcept {
  return x < 0.0 ? 0.5 * std::erfc(-x * kInvSqrt2) : 1.0 - 0.5 * std::erfc(x * kInvSqrt2);
}

inline double upper_tail(double x) noexcept { return lower_tail(-x); }

inline double density(double x) noexcept { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

// P{z1 < Z < z2} for z1 <= z2, evaluated on the tail that avoids cancellation.
inline double interval_mass(double z1, double z2) noexcept {
  if (z1 >= z2) return 0.0;
  if (z1 >= 0.0) return upper_tail(z1) - upper_tail(z2);
  if (z2 <= 0.0) return lower_tail(z2) - lower_tail(z1);
  return 1.0 - lower_tail(z1) - upper_tail(z2);
}

// P{Z <= z1} + P{Z >= z2}: mass of the two tails.
inline double tails_mass(double z1, double z2) noexcept {
  if (z1 >= z2) return 1.0;
  return lower_tail(z1) + upper_tail(z2);
}

}  // namespace detail

/// phi(x) = exp(-x^2/2) / sqrt(2 pi).
inline double std_normal_pdf(double x) {
  detail::require_finite(x, "std_normal_pdf");
  return detail::density(x);
}

/// Phi(x), absolute error below 1e-12 on the whole real line.
inline double std_normal_cdf(double x) {
  detail::require_finite(x, "std_normal_cdf");
  return detail::lower_tail(x);
}

/// 1 - Phi(x) without cancellation.
inline double std_normal_sf(double x) {
  detail::require_finite(x, "std_normal_sf");
  return detail::upper_tail(x);
}

inline double std_normal_pdf(StdNormalValue z) { return detail::density(z.value()); }
inline double std_normal_cdf(StdNormalValue z) { return detail::lower_tail(z.value()); }

/// Inverse of Phi by safeguarded Newton iteration inside a shrinking bisection
/// bracket. Upper-half probabilities are reflected, so the root is always
/// sought where Phi has full relative precision.
inline double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("std_normal_quantile: p must lie in (0, 1)");
  if (p == 0.5) return 0.0;
  if (p > 0.5) return -std_normal_quantile(1.0 - p);

  double lo = -40.0;
  double hi = 0.0;
  double x = -1.0;
  constexpr int kMaxIter = 200;
  constexpr double kTol = 1e-12;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    const double f = detail::lower_tail(x) - p;
    if (f == 0.0) return x;
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double d = detail::density(x);
    double next = d > 0.0 ? x - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= kTol * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  throw NumericError("std_normal_quantile: no convergence");
}

/// Integral of y * N(y; theta, sigma^2) over (-inf, a] U [b, inf).
///
/// Closed form theta * (1 - (Phi(z2) - Phi(z1))) + sigma * (phi(z2) - phi(z1))
/// with z1 = (a - theta)/sigma, z2 = (b - theta)/sigma.
inline double censored_region_first_moment(double a, double b, double theta, double sigma) {
  detail::require_finite(a, "censored_region_first_moment");
  detail::require_finite(b, "censored_region_first_moment");
  detail::require_finite(theta, "censored_region_first_moment");
  detail::require_domain(a <= b, "censored_region_first_moment: requires a <= b");
  detail::require_domain(sigma > 0.0 && std::isfinite(sigma),
                         "censored_region_first_moment: requires sigma > 0");
  const double z1 = (a - theta) / sigma;
  const double z2 = (b - theta) / sigma;
  return theta * detail::tails_mass(z1, z2) + sigma * (detail::density(z2) - detail::density(z1));
}

}  // namespace lrbsched

#endif  // LRBSCHED_GAUSSIAN_NUMERICS_HPP
