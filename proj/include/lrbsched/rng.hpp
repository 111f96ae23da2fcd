#ifndef LRBSCHED_RNG_HPP
#define LRBSCHED_RNG_HPP

// Counter-based random streams. Each (seed, stream_index) pair names an
// independent SplitMix64 sequence, so a Monte Carlo trial can be keyed by its
// coordinates (phase, N, trial, role) and reproduced regardless of the order
// in which trials are executed.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <optional>

namespace lrbsched {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_index) noexcept
      : seed_(seed),
        stream_index_(stream_index),
        state_(detail::mix64(seed ^ detail::mix64(stream_index + detail::kGolden))) {}

  /// Folds several coordinates into one stream index.
  static constexpr std::uint64_t substream_index(std::initializer_list<std::uint64_t> parts) noexcept {
    std::uint64_t h = 0x6a09e667f3bcc909ULL;
    for (const std::uint64_t part : parts) h = detail::mix64(h ^ detail::mix64(part + detail::kGolden));
    return h;
  }

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] std::uint64_t stream_index() const noexcept { return stream_index_; }

  std::uint64_t next_u64() noexcept {
    state_ += detail::kGolden;
    return detail::mix64(state_);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal by the Box-Muller transform; the second variate of each
  /// pair is kept for the next call.
  double normal() noexcept {
    if (spare_) {
      const double z = *spare_;
      spare_.reset();
      return z;
    }
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    return r * std::cos(angle);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::uint64_t state_;
  std::optional<double> spare_;
};

}  // namespace lrbsched

#endif  // LRBSCHED_RNG_HPP
