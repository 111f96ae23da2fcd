#ifndef LRBSCHED_CHANNEL_SIMULATOR_HPP
#define LRBSCHED_CHANNEL_SIMULATOR_HPP

// Sensor sampling, scheduling, deceptive-signal injection and the tester-side
// discrimination protocol for one tick of the networked detection loop.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <variant>

#include "lrbsched/detection_model.hpp"
#include "lrbsched/errors.hpp"
#include "lrbsched/exponent_analysis.hpp"
#include "lrbsched/rng.hpp"

namespace lrbsched {

struct SensorSample {
  double y;
};

/// What reaches the tester in one tick: the securely delivered scheduler bit
/// and up to two indistinguishable payloads in randomized order.
class ChannelObservation {
 public:
  static constexpr std::size_t kMaxPayloads = 2;

  explicit ChannelObservation(bool gamma) noexcept : gamma_(gamma) {}

  ChannelObservation(bool gamma, std::span<const double> payloads) : gamma_(gamma) {
    detail::require_usage(payloads.size() <= kMaxPayloads, "ChannelObservation: too many payloads");
    for (const double v : payloads) push(v);
  }

  [[nodiscard]] bool gamma() const noexcept { return gamma_; }
  [[nodiscard]] std::span<const double> payloads() const noexcept { return {values_.data(), count_}; }

  void push(double v) {
    detail::require_usage(count_ < kMaxPayloads, "ChannelObservation: too many payloads");
    values_[count_++] = v;
  }

  void swap_payloads() noexcept {
    if (count_ == 2) std::swap(values_[0], values_[1]);
  }

 private:
  bool gamma_;
  std::array<double, kMaxPayloads> values_{};
  std::size_t count_ = 0;
};

/// delta = 1 iff a transmitted measurement was uniquely identified; then
/// `recovered` holds it.
struct DiscriminationOutcome {
  bool gamma = false;
  bool delta = false;
  std::optional<double> recovered;
};

/// y = theta + sigma * Z.
inline SensorSample generate_sample(RngStream& rng, double theta, const HypothesisPair& pair) {
  return {theta + pair.sigma() * rng.normal()};
}

/// With probability `intensity` a deceptive payload q ~ N(q_mean, q_var).
/// Zero intensity consumes no randomness.
inline std::optional<double> attacker_inject(RngStream& rng, const AttackModel& attack) {
  if (attack.intensity() <= 0.0) return std::nullopt;
  if (attack.intensity() < 1.0 && !(rng.uniform() < attack.intensity())) return std::nullopt;
  return attack.q_mean() + attack.q_sigma() * rng.normal();
}

/// Scheduler bit for one sample. The random scheduler draws from `rng`.
inline bool schedule(const SensorSample& sample, const SchedulerSpec& sched, RngStream& rng) {
  if (const auto* lrb = std::get_if<LrbScheduler>(&sched)) return lrb_decide(sample.y, *lrb);
  const double p = std::get<RandomScheduler>(sched).p();
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return rng.uniform() < p;
}

/// Applies the scheduler and merges any injected payload. When two payloads
/// are present their order is a fair coin flip.
inline ChannelObservation transmit(const SensorSample& sample, const SchedulerSpec& sched,
                                   std::optional<double> injected, RngStream& rng) {
  ChannelObservation obs(schedule(sample, sched, rng));
  if (obs.gamma()) obs.push(sample.y);
  if (injected) obs.push(*injected);
  if (obs.payloads().size() == 2 && rng.uniform() < 0.5) obs.swap_payloads();
  return obs;
}

/// Discrimination protocol: discard everything when gamma = 0; when
/// gamma = 1 keep the payload only if it is the unique one inside U.
inline DiscriminationOutcome discriminate(const ChannelObservation& obs, const LrbScheduler& sched) {
  DiscriminationOutcome out;
  out.gamma = obs.gamma();
  if (!obs.gamma()) return out;
  std::size_t in_region = 0;
  double candidate = 0.0;
  for (const double v : obs.payloads()) {
    if (sched.in_transmit_region(v)) {
      ++in_region;
      candidate = v;
    }
  }
  if (in_region == 1) {
    out.delta = true;
    out.recovered = candidate;
  }
  return out;
}

inline DiscriminationOutcome discriminate(const ChannelObservation& obs, const SchedulerSpec& sched) {
  const auto* lrb = std::get_if<LrbScheduler>(&sched);
  if (lrb == nullptr) {
    throw UnsupportedProtocolError("discriminate: protocol is defined only for the LRB scheduler");
  }
  return discriminate(obs, *lrb);
}

/// Outcome on a secure channel (no injection possible): delta = gamma and the
/// single payload is the measurement.
inline DiscriminationOutcome secure_outcome(const ChannelObservation& obs) {
  DiscriminationOutcome out;
  out.gamma = obs.gamma();
  if (obs.gamma() && !obs.payloads().empty()) {
    out.delta = true;
    out.recovered = obs.payloads().front();
  }
  return out;
}

}  // namespace lrbsched

#endif  // LRBSCHED_CHANNEL_SIMULATOR_HPP
