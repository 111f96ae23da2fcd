// lrbsched: exponent sweeps, optimal thresholds, Monte Carlo Neyman-Pearson
// experiments and attack-optimal rates, written as CSV.
//
// Exit codes: 0 success, 2 configuration error, 3 numeric failure.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lrbsched/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr const char* kSeedEnv = "LRBSCHED_SEED";

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON experiment configuration")->required();
  cmd->add_option("--seed", opts.seed, "64-bit seed (overrides config and $LRBSCHED_SEED)");
  cmd->add_option("--out", opts.out, "output CSV path, '-' for standard output");
}

std::optional<std::uint64_t> seed_from_env() {
  const char* raw = std::getenv(kSeedEnv);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(raw, &used, 10);
    if (used != std::string(raw).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw lrbsched::UsageError(std::string(kSeedEnv) + ": expected an unsigned integer");
  }
}

int run(const CommonOptions& opts,
        const std::function<lrbsched::CsvTable(const lrbsched::ExperimentConfig&)>& produce) {
  try {
    auto cfg = lrbsched::load_config(opts.config_path);
    if (opts.seed) {
      cfg.seed = opts.seed;
    } else if (!cfg.seed) {
      cfg.seed = seed_from_env();
    }
    if (!opts.out.empty()) cfg.output = opts.out;
    if (cfg.output.empty()) cfg.output = "-";

    const auto table = produce(cfg);
    if (cfg.output == "-") {
      table.write(std::cout);
      std::cout.flush();
    } else {
      std::ofstream out(cfg.output, std::ios::binary);
      if (!out) throw lrbsched::UsageError("cannot open output '" + cfg.output + "'");
      table.write(out);
      if (!out) throw lrbsched::UsageError("failed writing '" + cfg.output + "'");
    }
    return kExitOk;
  } catch (const lrbsched::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const lrbsched::UnsupportedProtocolError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LRB scheduler detection toolkit"};
  app.require_subcommand(1);

  CommonOptions exp_opts, thr_opts, sim_opts, att_opts;
  auto* exponents = app.add_subcommand("exponents", "error exponents over a rate grid");
  auto* thresholds = app.add_subcommand("thresholds", "optimal thresholds over a rate grid");
  auto* simulate = app.add_subcommand("simulate", "two-step Monte Carlo Type I/II errors");
  auto* attack = app.add_subcommand("attack-optimum", "exponent-maximizing rate per attack intensity");
  add_common(exponents, exp_opts);
  add_common(thresholds, thr_opts);
  add_common(simulate, sim_opts);
  add_common(attack, att_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (exponents->parsed()) return run(exp_opts, lrbsched::run_exponent_sweep);
  if (thresholds->parsed()) return run(thr_opts, lrbsched::run_threshold_table);
  if (simulate->parsed()) return run(sim_opts, lrbsched::run_mc_experiment);
  return run(att_opts, lrbsched::run_attack_optimum);
}
