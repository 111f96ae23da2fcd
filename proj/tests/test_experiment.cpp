#include <cmath>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "lrbsched/experiment.hpp"

namespace lrbsched {
namespace {

std::string usage_message(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const UsageError& e) {
    return e.what();
  }
  return {};
}

TEST(SnrToTheta1, ReferenceValues) {
  EXPECT_EQ(snr_to_theta1(0.0, 1.0), 1.0);
  EXPECT_NEAR(snr_to_theta1(-3.0, 1.0), 0.70794578438413791, 1e-15);
  EXPECT_NEAR(snr_to_theta1(3.0, 1.0), 1.4125375446227543, 1e-15);
  EXPECT_NEAR(snr_to_theta1(0.0, 4.0), 2.0, 1e-15);
}

TEST(ParseConfig, Defaults) {
  const auto cfg = parse_config_text(R"({"theta1": 1.0})");
  EXPECT_EQ(cfg.theta0, 0.0);
  EXPECT_EQ(cfg.sigma2, 1.0);
  EXPECT_EQ(cfg.rates.size(), 100u);
  EXPECT_EQ(cfg.rates.front(), 0.01);
  EXPECT_EQ(cfg.rates.back(), 1.0);
  EXPECT_EQ(cfg.n_list.front(), 5);
  EXPECT_EQ(cfg.n_list.back(), 60);
  EXPECT_EQ(cfg.samples, 5000);
  EXPECT_EQ(cfg.significance, 0.05);
  EXPECT_FALSE(cfg.seed.has_value());
}

TEST(ParseConfig, SnrForm) {
  const auto cfg = parse_config_text(R"({"snr_db": 3.0, "rates": [0.5]})");
  EXPECT_NEAR(cfg.theta1, 1.4125375446227543, 1e-15);
  EXPECT_NE(usage_message(R"({"snr_db": 3.0, "theta0": 1.0})"), "");
  EXPECT_NE(usage_message(R"({"snr_db": 3.0, "theta1": 1.0})"), "");
}

TEST(ParseConfig, SingleSchedulerForm) {
  const auto cfg = parse_config_text(
      R"({"theta1": 1, "scheduler": {"type": "lrb", "rate": 0.4},
          "attack": {"intensity": 0.5, "q_mean": 2.0, "q_var": 0.5}})");
  ASSERT_EQ(cfg.series.size(), 1u);
  EXPECT_EQ(cfg.series[0].kind, SeriesSpec::Kind::kLrb);
  EXPECT_EQ(cfg.series[0].rate, 0.4);
  EXPECT_EQ(cfg.series[0].attack_intensity, 0.5);
  EXPECT_EQ(cfg.attack(0.5).q_mean(), 2.0);
  EXPECT_EQ(cfg.attack(0.5).q_var(), 0.5);
}

TEST(ParseConfig, ErrorsNameTheField) {
  EXPECT_NE(usage_message(R"({"theta1": 1, "sigma2": -1})").find("sigma2"), std::string::npos);
  EXPECT_NE(usage_message(R"({"theta1": 1, "rates": [0.5, 1.2]})").find("rates[1]"), std::string::npos);
  EXPECT_NE(usage_message(R"({"theta1": 1, "bogus": 3})").find("bogus"), std::string::npos);
  EXPECT_NE(usage_message(R"({"theta1": 1, "samples": 10})").find("samples"), std::string::npos);
  EXPECT_NE(usage_message(R"({"theta1": 1, "significance": 0.7})").find("significance"), std::string::npos);
  EXPECT_NE(usage_message(R"({"theta1": 1, "rate_step": 0.03})").find("rate_step"), std::string::npos);
  EXPECT_NE(usage_message(R"({"theta1": 1, "series": [{"scheduler": "random", "rate": 0.5, "attack_intensity": 0.5}]})")
                .find("series[0].attack_intensity"),
            std::string::npos);
  EXPECT_NE(usage_message(R"({"theta1": 0})").find("theta1"), std::string::npos);
  EXPECT_NE(usage_message("{not json").find("invalid JSON"), std::string::npos);
}

TEST(ParseConfig, SeedMustBeUnsigned) {
  EXPECT_NE(usage_message(R"({"theta1": 1, "seed": -4})").find("seed"), std::string::npos);
  EXPECT_EQ(*parse_config_text(R"({"theta1": 1, "seed": 18446744073709551615})").seed,
            18446744073709551615ULL);
}

TEST(EffectiveSeries, AppendsFullBaselineOnce) {
  auto cfg = parse_config_text(R"({"theta1": 1, "series": [{"scheduler": "lrb", "rate": 0.5}]})");
  EXPECT_EQ(effective_series(cfg).size(), 2u);
  cfg = parse_config_text(R"({"theta1": 1, "series": [{"scheduler": "full"}]})");
  EXPECT_EQ(effective_series(cfg).size(), 1u);
  cfg = parse_config_text(
      R"({"theta1": 1, "include_full_baseline": false, "series": [{"scheduler": "lrb", "rate": 0.5}]})");
  EXPECT_EQ(effective_series(cfg).size(), 1u);
}

TEST(RunExponentSweep, ColumnsAndValues) {
  const auto cfg = parse_config_text(R"({"theta1": 1, "rates": [0.5, 1.0], "attack_intensities": [0, 1]})");
  const auto text = run_exponent_sweep(cfg).str();
  std::istringstream in(text);
  std::string header, row1, row2;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  EXPECT_EQ(header, "R,lrb_exponent,random_exponent,attacked_exponent_p0,attacked_exponent_p1,a_star,b_star");
  EXPECT_EQ(row1.substr(0, 4), "0.5,");
  EXPECT_EQ(row2, "1,0.5,0.5,0.5,0,0.5,0.5");
}

TEST(RunThresholdTable, SymmetricRates) {
  const auto cfg = parse_config_text(R"({"theta1": 1, "rates": [0.3]})");
  const auto text = run_threshold_table(cfg).str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "R,a_star,b_star,half_width,rate_theta0,rate_theta1,lrb_exponent,random_exponent,dominance_gap");
}

TEST(RunAttackOptimum, ReferenceOptima) {
  const auto cfg = parse_config_text(
      R"({"theta1": 1, "rates": [0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0], "attack_intensities": [1.0, 0.5]})");
  const auto text = run_attack_optimum(cfg).str();
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 6), "1,0.3,");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 8), "0.5,0.5,");
}

TEST(RunMcExperiment, ByteIdenticalForFixedSeed) {
  const std::string doc = R"({"theta1": 1, "seed": 7, "samples": 200, "n_list": [5, 10],
      "series": [{"scheduler": "lrb", "rate": 0.5, "attack_intensity": 0.5},
                 {"scheduler": "random", "rate": 0.5}]})";
  const auto a = run_mc_experiment(parse_config_text(doc)).str();
  const auto b = run_mc_experiment(parse_config_text(doc)).str();
  EXPECT_EQ(a, b);
  // Header plus 3 series x 2 N.
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 7);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  EXPECT_EQ(std::stod(format_double(0.45559536796428748)), 0.45559536796428748);
}

TEST(CsvTable, WidthChecked) {
  CsvTable t({"a", "b"});
  EXPECT_THROW(t.add_row({1.0}), UsageError);
  t.add_row({1.0, std::string("x")});
  EXPECT_EQ(t.str(), "a,b\n1,x\n");
}

}  // namespace
}  // namespace lrbsched
