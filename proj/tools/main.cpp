#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sfncast/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Per-layer power and transmission-slot planner for layered video "
               "broadcast over a single-frequency cell cluster"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run the allocation sweep from a config file");
  std::string config_path, run_out = "out";
  uint64_t run_seed = 0;
  bool have_seed = false;
  std::string strategy;
  double budget = 0;
  bool have_budget = false;
  int rbp = 0;
  bool have_rbp = false;
  sfncast::RunOverrides overrides;
  run->add_option("--config", config_path, "Scenario config file")->required();
  run->add_option("--out", run_out, "Output directory");
  run->add_option("--seed", run_seed, "Random seed recorded in the manifest")
      ->each([&](const std::string&) { have_seed = true; });
  run->add_option("--strategy", strategy, "Restrict the sweep to one strategy")
      ->check(CLI::IsMember({"msp", "hmsp", "usp", "upa"}));
  run->add_option("--budget", budget, "Restrict the sweep to one power budget [W]")
      ->each([&](const std::string&) { have_budget = true; });
  run->add_option("--rbp", rbp, "Restrict the sweep to one TB size [RBPs]")
      ->each([&](const std::string&) { have_rbp = true; });
  run->add_flag("--psnr-independent-layers", overrides.psnr_independent_layers,
                "Weigh each quality level by its own layer probability only");
  run->add_flag("--invert-constraint", overrides.invert_constraint,
                "Fit the rate curve above the samples instead of below");
  run->add_flag("--eq3-interference-term", overrides.per_link_interference_term,
                "Subtract the aggregate interference level from each SFN link gain");

  // fit
  auto* fit = app.add_subcommand("fit", "Fit rate-curve correction factors to samples");
  std::string samples_path, fit_out = "out";
  double w_hz = 1.62e6, sigma_min_db = 6.33, sigma_max_db = 31.32;
  bool fit_invert = false;
  fit->add_option("--samples", samples_path, "Sample file (sinr_db,rate_bps per line)")
      ->required();
  fit->add_option("--w-hz", w_hz, "TB bandwidth the samples were taken at [Hz]");
  fit->add_option("--sigma-min-db", sigma_min_db, "Lower SINR clipping threshold [dB]");
  fit->add_option("--sigma-max-db", sigma_max_db, "Upper SINR clipping threshold [dB]");
  fit->add_flag("--invert-constraint", fit_invert,
                "Fit the rate curve above the samples instead of below");
  fit->add_option("--out", fit_out, "Output directory");

  // validate-rlnc
  auto* val = app.add_subcommand(
      "validate-rlnc", "Compare the closed-form recovery probability with Monte Carlo");
  int kmax = 6, nmax = 10;
  std::vector<uint32_t> orders = {2, 4};
  int64_t trials = 100000;
  uint64_t val_seed = 1;
  std::string val_out = "out";
  val->add_option("--kmax", kmax, "Largest source block size");
  val->add_option("--nmax", nmax, "Largest received symbol count");
  val->add_option("--q", orders, "Field orders (prime powers)")->delimiter(',');
  val->add_option("--trials", trials, "Monte Carlo trials per cell")
      ->check(CLI::PositiveNumber);
  val->add_option("--seed", val_seed, "Random seed");
  val->add_option("--out", val_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*run) {
    if (have_seed) overrides.seed = run_seed;
    if (!strategy.empty()) overrides.strategy = sfncast::strategy_from_string(strategy);
    if (have_budget) overrides.budget_w = budget;
    if (have_rbp) overrides.rbp = rbp;
    return sfncast::cmd_run(config_path, run_out, overrides, std::cout);
  }
  if (*fit) {
    return sfncast::cmd_fit(samples_path, w_hz, sigma_min_db, sigma_max_db, fit_invert,
                            fit_out, std::cout);
  }
  return sfncast::cmd_validate_rlnc(kmax, nmax, orders, trials, val_seed, val_out,
                                    std::cout);
}
