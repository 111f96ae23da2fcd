#ifndef LRBSCHED_TESTS_ORACLES_HPP
#define LRBSCHED_TESTS_ORACLES_HPP

// Reference computations for the tests. Everything here is evaluated by
// composite Gauss-Kronrod quadrature of the raw densities or by brute-force
// scanning, never through the library's closed forms.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Integral of a Gaussian-weighted integrand with bulk near `center` and
/// width `scale`. Infinite limits are cut at 40 scales (the mass beyond is
/// below 1e-340), the rest is covered by fixed 61-point Gauss-Kronrod panels
/// of half a scale each.
template <class F>
double integrate(F f, double lo, double hi, double center = 0.0, double scale = 1.0) {
  using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  lo = std::max(lo, center - 40.0 * scale);
  hi = std::min(hi, center + 40.0 * scale);
  if (!(lo < hi)) return 0.0;
  const double width = 0.5 * scale;
  const auto panels = static_cast<int>(std::ceil((hi - lo) / width));
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double a = lo + (hi - lo) * k / panels;
    const double b = k + 1 == panels ? hi : lo + (hi - lo) * (k + 1) / panels;
    total += Quad::integrate(f, a, b, 0);
  }
  return total;
}

inline double normal_density(double y, double mean, double sigma) {
  const double z = (y - mean) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

/// Phi(x) by quadrature of the density; the lower half uses the tail
/// integral directly so small values keep their relative accuracy.
inline double cdf(double x) {
  auto phi = [](double t) { return normal_density(t, 0.0, 1.0); };
  if (x <= 0.0) return integrate(phi, -kInf, x);
  return 0.5 + integrate(phi, 0.0, x);
}

/// Integral of y N(y; theta, sigma^2) over (-inf, a] U [b, inf).
inline double tails_first_moment(double a, double b, double theta, double sigma) {
  auto f = [&](double y) { return y * normal_density(y, theta, sigma); };
  return integrate(f, -kInf, a, theta, sigma) + integrate(f, b, kInf, theta, sigma);
}

/// Mass of N(theta, sigma^2) over (a, b).
inline double interval_mass(double a, double b, double theta, double sigma) {
  if (a >= b) return 0.0;
  return integrate([&](double y) { return normal_density(y, theta, sigma); }, a, b, theta, sigma);
}

/// Relative entropy of the scheduled observation law (gamma, gamma * y)
/// from H0 to H1: integral over U of p0 ln(p0/p1), plus the gamma = 0 atom.
inline double scheduled_kl(double theta0, double theta1, double sigma2, double a, double b) {
  const double sigma = std::sqrt(sigma2);
  auto integrand = [&](double y) {
    const double p0 = normal_density(y, theta0, sigma);
    const double log_ratio =
        (-(y - theta0) * (y - theta0) + (y - theta1) * (y - theta1)) / (2.0 * sigma2);
    return p0 * log_ratio;
  };
  const double continuous =
      integrate(integrand, -kInf, a, theta0, sigma) + integrate(integrand, b, kInf, theta0, sigma);
  const double c0 = interval_mass(a, b, theta0, sigma);
  const double c1 = interval_mass(a, b, theta1, sigma);
  const double atom = c0 > 0.0 ? c0 * std::log(c0 / c1) : 0.0;
  return continuous + atom;
}

/// Transmission rate under theta0 for the symmetric design of half-width t,
/// written directly in terms of erfc.
inline double symmetric_rate(double theta0, double theta1, double sigma, double t) {
  const double m = 0.5 * (theta0 + theta1);
  const double z1 = (m - t - theta0) / sigma;
  const double z2 = (m + t - theta0) / sigma;
  return 0.5 * std::erfc(-z1 / std::numbers::sqrt2) + 0.5 * std::erfc(z2 / std::numbers::sqrt2);
}

/// Smallest grid point t = k * step whose rate does not exceed R, found by a
/// coarse scan followed by a fine scan at `step` inside the bracketing cell.
inline double scan_half_width(double theta0, double theta1, double sigma, double rate,
                              double step = 1e-6) {
  if (rate >= 1.0) return 0.0;
  constexpr double kCoarse = 1e-3;
  double t = 0.0;
  while (symmetric_rate(theta0, theta1, sigma, t + kCoarse) > rate) t += kCoarse;
  const auto k0 = static_cast<long long>(std::floor(t / step));
  for (long long k = k0;; ++k) {
    const double tk = static_cast<double>(k) * step;
    if (symmetric_rate(theta0, theta1, sigma, tk) <= rate) return tk;
  }
}

}  // namespace oracle

#endif  // LRBSCHED_TESTS_ORACLES_HPP
