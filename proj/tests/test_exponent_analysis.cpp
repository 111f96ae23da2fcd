#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lrbsched/exponent_analysis.hpp"
#include "lrbsched/threshold_solver.hpp"
#include "oracles.hpp"

namespace lrbsched {
namespace {

const HypothesisPair kUnit{0.0, 1.0, 1.0};

TEST(ErrorExponent, Invariants) {
  EXPECT_THROW(ErrorExponent(-1e-3), DomainError);
  EXPECT_THROW(ErrorExponent(std::nan("")), DomainError);
  EXPECT_THROW(ErrorExponent{INFINITY}, DomainError);
  EXPECT_LT(ErrorExponent(0.1), ErrorExponent(0.2));
}

TEST(LrbExponent, ReferenceValues) {
  // Quadrature of the scheduled relative entropy at 30 digits.
  EXPECT_NEAR(lrb_exponent(kUnit, LrbScheduler(-0.262, 1.262, kUnit)).value(), 0.45563281185635284, 1e-12);
  EXPECT_NEAR(lrb_exponent(kUnit, LrbScheduler(0.0638, 0.9362, kUnit)).value(), 0.49075416732210078, 1e-12);
}

TEST(LrbExponent, DegenerateEqualsFull) {
  const HypothesisPair pair(-1.0, 2.0, 3.0);
  EXPECT_NEAR(lrb_exponent(pair, LrbScheduler::symmetric(pair, 0.0)).value(), full_exponent(pair).value(),
              1e-14);
}

TEST(LrbExponent, MatchesQuadratureOfRelativeEntropy) {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> loc(-2.0, 2.0), gap(0.1, 2.5), var(0.3, 3.0), hw(0.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double t0 = loc(gen);
    const HypothesisPair pair(t0, t0 + gap(gen), var(gen));
    const auto s = LrbScheduler::symmetric(pair, hw(gen));
    const double ref = oracle::scheduled_kl(pair.theta0(), pair.theta1(), pair.sigma2(), s.a(), s.b());
    ASSERT_NEAR(lrb_exponent(pair, s).value(), ref, 1e-9 * std::max(1.0, ref)) << i;
  }
}

TEST(LrbExponent, VanishesAsRegionShrinks) {
  const auto s = LrbScheduler::symmetric(kUnit, 12.0);
  EXPECT_LT(lrb_exponent(kUnit, s).value(), 1e-20);
}

TEST(FullExponent, Value) {
  EXPECT_EQ(full_exponent(kUnit).value(), 0.5);
  EXPECT_NEAR(full_exponent(HypothesisPair(1.0, 4.0, 2.0)).value(), 2.25, 1e-15);
}

TEST(RandomExponent, LinearInRate) {
  EXPECT_EQ(random_exponent(kUnit, 0.0).value(), 0.0);
  EXPECT_EQ(random_exponent(kUnit, 1.0).value(), 0.5);
  EXPECT_NEAR(random_exponent(kUnit, 0.5).value(), 0.25, 1e-16);
  EXPECT_THROW(random_exponent(kUnit, 1.1), DomainError);
}

TEST(RandomExponent, MatchesBernoulliThinnedRelativeEntropy) {
  // A rate-R coin thins the sample without changing its law.
  const double rate = 0.37;
  const auto s = LrbScheduler::symmetric(kUnit, 0.0);
  const double ref = rate * oracle::scheduled_kl(0.0, 1.0, 1.0, s.a(), s.b());
  EXPECT_NEAR(random_exponent(kUnit, rate).value(), ref, 1e-12);
}

TEST(AttackModel, Invariants) {
  EXPECT_THROW(AttackModel(-0.1, 0.0, 1.0), DomainError);
  EXPECT_THROW(AttackModel(1.1, 0.0, 1.0), DomainError);
  EXPECT_THROW(AttackModel(0.5, 0.0, 0.0), DomainError);
  EXPECT_THROW(AttackModel(0.5, NAN, 1.0), DomainError);
  const auto m = AttackModel::mimicking_alternative(0.4, kUnit);
  EXPECT_EQ(m.q_mean(), 1.0);
  EXPECT_EQ(m.q_var(), 1.0);
}

TEST(AttackEta, EndpointsAndDirectProbability) {
  const auto s = LrbScheduler(-0.262, 1.262, kUnit);
  EXPECT_EQ(attack_eta(s, kUnit, AttackModel::mimicking_alternative(0.0, kUnit)), 1.0);
  const double q_in_u = 1.0 - oracle::interval_mass(-0.262, 1.262, 1.0, 1.0);
  EXPECT_NEAR(attack_eta(s, kUnit, AttackModel::mimicking_alternative(1.0, kUnit)), 1.0 - q_in_u, 1e-12);
  EXPECT_NEAR(attack_eta(s, kUnit, AttackModel(0.25, -3.0, 0.5)),
              1.0 - 0.25 * (1.0 - oracle::interval_mass(-0.262, 1.262, -3.0, std::sqrt(0.5))), 1e-12);
  // Full transmission region: every injection collides.
  const auto full = LrbScheduler::symmetric(kUnit, 0.0);
  EXPECT_EQ(attack_eta(full, kUnit, AttackModel::mimicking_alternative(1.0, kUnit)), 0.0);
}

TEST(AttackedExponent, ScalesByEta) {
  const auto s = LrbScheduler(-0.262, 1.262, kUnit);
  const auto attack = AttackModel::mimicking_alternative(0.6, kUnit);
  EXPECT_DOUBLE_EQ(attacked_exponent(kUnit, s, attack).value(),
                   attack_eta(s, kUnit, attack) * lrb_exponent(kUnit, s).value());
  EXPECT_EQ(attacked_exponent(kUnit, s, AttackModel::mimicking_alternative(0.0, kUnit)),
            lrb_exponent(kUnit, s));
}

TEST(AttackedExponent, NearFullRateCollapsesUnderFullIntensity) {
  const auto d = solve_optimal_thresholds(kUnit, RateConstraint(0.99));
  const double v = attacked_exponent(kUnit, d.scheduler, AttackModel::mimicking_alternative(1.0, kUnit)).value();
  EXPECT_GT(v, 0.0);
  EXPECT_LT(v, 0.01);
}

TEST(SampleComplexity, Values) {
  EXPECT_NEAR(sample_complexity(ErrorExponent(0.25), 0.01), 18.420680743952367, 1e-12);
  EXPECT_EQ(sample_complexity(ErrorExponent(0.25), 1.0), 0.0);
  EXPECT_FALSE(std::signbit(sample_complexity(ErrorExponent(0.25), 1.0)));
  EXPECT_THROW(sample_complexity(ErrorExponent(0.0), 0.01), InfiniteSamplesError);
  EXPECT_THROW(sample_complexity(ErrorExponent(0.3), 0.0), DomainError);
  EXPECT_THROW(sample_complexity(ErrorExponent(0.3), 1.5), DomainError);
}

}  // namespace
}  // namespace lrbsched
