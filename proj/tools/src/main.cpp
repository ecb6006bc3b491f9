#include <iostream>

#include <CLI11.hpp>

#include "bracketlab/cli/commands.hpp"

using namespace bracketlab::cli;

int main(int argc, char** argv) {
  CLI::App app{"bracketlab: simulate, estimate and verify choice bracketing experiments"};
  app.require_subcommand(1);

  SimulateOptions sim;
  unsigned sim_workers = 0;
  std::uint64_t sim_seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Simulate a dataset from a config file");
  simulate->add_option("--config", sim.config, "INI run configuration")->required();
  simulate->add_option("--out", sim.out, "Output CSV path ('-' or omitted: stdout)");
  auto* seed_opt = simulate->add_option("--seed", sim_seed, "Override run.seed");
  auto* workers_opt =
      simulate->add_option("--workers", sim_workers, "Worker threads (0 = all cores)");

  EstimateOptions est;
  std::string est_config;
  double censor_limit = 0.0;
  auto* estimate = app.add_subcommand("estimate", "Estimate tables from a dataset CSV");
  estimate->add_option("what", est.what, "means | mwu | kappa | tobit")
      ->required()
      ->check(CLI::IsMember({"means", "mwu", "kappa", "tobit"}));
  estimate->add_option("--data", est.data, "Dataset CSV")->required();
  estimate->add_option("--out", est.out, "Report prefix; writes <out>.md and <out>.csv");
  auto* est_config_opt =
      estimate->add_option("--config", est_config, "Read [estimate] options from a config");
  auto* limit_opt =
      estimate->add_option("--censor-limit", censor_limit, "Tobit right-censoring limit");
  auto* continuity_flag =
      estimate->add_flag("--continuity", "Continuity correction in rank-sum tests");
  auto* keep_flag = estimate->add_flag("--keep-inconsistent",
                                       "Keep non-monotone scenarios instead of dropping them");

  PowerOptions pow;
  auto* power = app.add_subcommand("power", "Two-sample sample sizes");
  power->add_option("--d", pow.d, "Standardized effect size")->capture_default_str();
  power->add_option("--alpha", pow.alpha, "Two-sided significance level")->capture_default_str();
  power->add_option("--power", pow.power, "Target power")->capture_default_str();
  power->add_option("--ratio", pow.ratio, "Allocation ratio n_large / n_small")
      ->capture_default_str();
  power->add_flag("--are", pow.are, "Inflate by pi/3 for the rank-sum test");

  VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "Run theory checks over the model zoo");
  verify->add_option("--suite", ver.suite,
                     "additivity | unidentifiability | cara | mixture | warp | all")
      ->capture_default_str();
  verify->add_option("--seed", ver.seed, "Seed for randomized menus")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (simulate->parsed()) {
    if (*seed_opt) sim.seed = sim_seed;
    if (*workers_opt) sim.workers = sim_workers;
    return cmd_simulate(sim, std::cout, std::cerr);
  }
  if (estimate->parsed()) {
    if (*est_config_opt) est.config = est_config;
    if (*limit_opt) est.censor_limit = censor_limit;
    if (*continuity_flag) est.continuity = true;
    if (*keep_flag) est.keep_inconsistent = true;
    return cmd_estimate(est, std::cout, std::cerr);
  }
  if (power->parsed()) return cmd_power(pow, std::cout, std::cerr);
  return cmd_verify(ver, std::cout, std::cerr);
}
