#include "sfncast/driver.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sfncast/config.hpp"
#include "sfncast/report.hpp"
#include "sfncast/rlnc.hpp"
#include "sfncast/text.hpp"

namespace sfncast {
namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out << content;
}

std::string override_fingerprint(const RunOverrides& ov) {
  std::string s;
  s += "seed=" + (ov.seed ? std::to_string(*ov.seed) : std::string("-"));
  s += ";strategy=" + (ov.strategy ? std::string(to_string(*ov.strategy)) : std::string("-"));
  s += ";budget=" + (ov.budget_w ? format_double(*ov.budget_w) : std::string("-"));
  s += ";rbp=" + (ov.rbp ? std::to_string(*ov.rbp) : std::string("-"));
  s += ";psnr_independent=" + std::to_string(ov.psnr_independent_layers);
  s += ";invert=" + std::to_string(ov.invert_constraint);
  s += ";link_interference=" + std::to_string(ov.per_link_interference_term);
  return s;
}

}  // namespace

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const RunOverrides& ov, std::ostream& diag) {
  ScenarioConfig cfg;
  std::string config_bytes;
  try {
    config_bytes = read_file(config_path);
    std::istringstream in(config_bytes);
    cfg = parse_config(in, config_path);
    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.strategy) cfg.strategies = {to_string(*ov.strategy)};
    if (ov.budget_w) cfg.budgets_w = {*ov.budget_w};
    if (ov.rbp) cfg.rbp_counts = {*ov.rbp};
    cfg.per_link_interference_term = ov.per_link_interference_term;
    cfg.invert_fit_constraint = ov.invert_constraint;
    validate_config(cfg);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    const RateModelParams rate_params = rate_params_from_config(cfg);
    const VideoStream stream = stream_from_config(cfg);
    const NetworkScenario base =
        scenario_from_config(cfg, cfg.rbp_counts.front() * kRbpBandwidthHz);
    const std::vector<Strategy> strategies = strategies_from_config(cfg);

    SweepOptions options;
    options.extra_eval_users = extra_eval_users_from_config(cfg);
    options.psnr_independent_layers = ov.psnr_independent_layers;

    SweepResult sweep = run_sweep(base, stream, rate_params, cfg.budgets_w,
                                  cfg.rbp_counts, strategies, options);

    // Per-user quality profile at the designated cell.
    const double psnr_budget = ov.budget_w ? *ov.budget_w : cfg.psnr_budget_w;
    const int psnr_rbp = ov.rbp ? *ov.rbp : cfg.psnr_rbp;
    NetworkScenario psnr_sc = base;
    psnr_sc.tb_bandwidth_hz = psnr_rbp * kRbpBandwidthHz;
    RateModel psnr_model(rate_params.alpha, rate_params.beta, rate_params.sigma_min_db,
                         rate_params.sigma_max_db, psnr_sc.tb_bandwidth_hz);
    AllocationProblem psnr_pb = make_problem(stream, psnr_sc, psnr_model);
    std::vector<UserTerminal> eval_users = psnr_sc.users;
    eval_users.insert(eval_users.end(), options.extra_eval_users.begin(),
                      options.extra_eval_users.end());
    std::vector<PsnrRow> psnr_rows;
    for (Strategy strat : strategies) {
      AllocationSolution sol;
      switch (strat) {
        case Strategy::kMspExact: sol = solve_msp_exact(psnr_pb, psnr_budget); break;
        case Strategy::kHmsp: sol = solve_hmsp(psnr_pb, psnr_budget); break;
        case Strategy::kUsp: sol = solve_usp(psnr_pb); break;
        case Strategy::kUpa: sol = solve_upa(psnr_pb, psnr_budget); break;
      }
      if (sol.layers.empty()) continue;
      auto rows = psnr_profile(sol, stream, eval_users, psnr_sc, psnr_model,
                               ov.psnr_independent_layers);
      psnr_rows.insert(psnr_rows.end(), rows.begin(), rows.end());
    }

    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "results.csv", results_csv(sweep));
    write_file(fs::path(out_dir) / "psnr.csv", psnr_csv(psnr_rows));
    const uint64_t hash = fnv1a64(config_bytes + "\n" + override_fingerprint(ov));
    write_file(fs::path(out_dir) / "manifest.txt",
               manifest_text(kVersion, hash, cfg.seed));

    int infeasible = 0;
    for (const auto& r : sweep.records) {
      if (!r.feasible) ++infeasible;
    }
    diag << "wrote " << sweep.records.size() << " sweep records to " << out_dir
         << " (" << infeasible << " infeasible)\n";
    return infeasible > 0 ? 2 : 0;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_fit(const std::string& samples_path, double tb_bandwidth_hz,
            double sigma_min_db, double sigma_max_db, bool invert_constraint,
            const std::string& out_dir, std::ostream& diag) {
  try {
    auto samples = load_rate_samples(samples_path);
    LadFit fit =
        fit_lad(samples, tb_bandwidth_hz, sigma_min_db, sigma_max_db, invert_constraint);
    RateModel model(fit.alpha, fit.beta, sigma_min_db, sigma_max_db, tb_bandwidth_hz);
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "model_card.txt", model_card_text(model));
    diag << "alpha=" << format_double(fit.alpha) << " beta=" << format_double(fit.beta)
         << " residual_sum=" << format_double(fit.residual_sum) << " samples_used="
         << fit.samples_used << "\n";
    return 0;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_validate_rlnc(int kmax, int nmax, const std::vector<uint32_t>& field_orders,
                      int64_t trials, uint64_t seed, const std::string& out_dir,
                      std::ostream& diag) {
  try {
    if (kmax < 1 || nmax < 1) throw std::invalid_argument("kmax and nmax must be >= 1");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (field_orders.empty()) throw std::invalid_argument("need at least one field order");

    std::string out = "q,K,N,closed_form,monte_carlo,z\n";
    bool exceeded = false;
    uint64_t cell = 0;
    for (uint32_t q : field_orders) {
      FieldSpec field(q);
      for (int k = 1; k <= kmax; ++k) {
        for (int n = 1; n <= nmax; ++n) {
          double closed = decode_probability(k, n, q);
          // Independent substream per cell.
          double mc = monte_carlo_full_rank(k, n, field, trials, seed ^ (0x9e3779b97f4a7c15ULL * ++cell));
          double se = std::sqrt(closed * (1.0 - closed) / static_cast<double>(trials));
          double z;
          if (se > 0) {
            z = (mc - closed) / se;
          } else {
            z = (mc == closed) ? 0.0 : std::numeric_limits<double>::infinity();
          }
          if (std::abs(z) > 4) exceeded = true;
          out += std::to_string(q) + "," + std::to_string(k) + "," + std::to_string(n) +
                 "," + format_double(closed) + "," + format_double(mc) + "," +
                 format_double(z) + "\n";
        }
      }
    }
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "rlnc_validation.txt", out);
    diag << (exceeded ? "z-score threshold exceeded\n" : "all z-scores within 4\n");
    return exceeded ? 2 : 0;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace sfncast
