#include "sfncast/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "sfncast/rlnc.hpp"

namespace sfncast {
namespace {

double recovery_probability(const VideoStream& stream, const RateModel& model,
                            const AllocationSolution& sol, int layer, double h) {
  const auto& ly = stream.layers.at(layer);
  const auto& a = sol.layers.at(layer);
  double rate = model.rate_bps(a.power_watts, h);
  int64_t n = received_symbols(rate, a.transmissions, ly.symbol_size_bits,
                               stream.tti_seconds);
  return decode_probability(ly.k_symbols, n, stream.field.order());
}

}  // namespace

SleepReport sleep_period(const AllocationSolution& sol, int gop_budget_ttis) {
  if (sol.layers.empty()) throw std::invalid_argument("solution has no allocation");
  int t_max = 0;
  for (const auto& l : sol.layers) t_max = std::max(t_max, l.transmissions);
  SleepReport r;
  r.xi_ttis = gop_budget_ttis - t_max;
  r.epsilon = static_cast<double>(r.xi_ttis) / static_cast<double>(gop_budget_ttis);
  return r;
}

double layer_recovery_probability(const AllocationProblem& pb,
                                  const AllocationSolution& sol, int layer,
                                  double h_user) {
  return recovery_probability(pb.stream, pb.model, sol, layer, h_user);
}

double psnr_from_probabilities(const VideoStream& stream,
                               const std::vector<double>& layer_probs,
                               bool independent_layers) {
  if (layer_probs.size() != stream.layers.size()) {
    throw std::invalid_argument("one probability per layer expected");
  }
  double best = 0;  // quality level 0 carries 0 dB
  double cumulative = 1;
  for (size_t l = 0; l < stream.layers.size(); ++l) {
    double weight = independent_layers ? layer_probs[l] : (cumulative *= layer_probs[l]);
    best = std::max(best, stream.layers[l].psnr_db * weight);
  }
  return best;
}

double user_psnr(const AllocationSolution& sol, const VideoStream& stream,
                 const UserTerminal& user, const NetworkScenario& scenario,
                 const RateModel& model, bool independent_layers) {
  const double h = aggregate_channel_factor(user, scenario);
  std::vector<double> probs;
  probs.reserve(stream.layers.size());
  for (size_t l = 0; l < stream.layers.size(); ++l) {
    probs.push_back(recovery_probability(stream, model, sol, static_cast<int>(l), h));
  }
  return psnr_from_probabilities(stream, probs, independent_layers);
}

double coverage_distance(const AllocationSolution& sol, const VideoStream& stream,
                         const std::vector<UserTerminal>& users,
                         const NetworkScenario& scenario, const RateModel& model,
                         int qos_level) {
  if (qos_level < 0 || qos_level > static_cast<int>(stream.layers.size())) {
    throw std::invalid_argument("QoS level out of range");
  }
  double best = 0;
  for (const auto& u : users) {
    double h = aggregate_channel_factor(u, scenario);
    double cumulative = 1;
    for (int l = 0; l < qos_level; ++l) {
      cumulative *= recovery_probability(stream, model, sol, l, h);
    }
    if (cumulative >= stream.target_recovery_prob) best = std::max(best, norm(u.position));
  }
  return best;
}

namespace {

struct CellContext {
  NetworkScenario scenario;
  RateModel model;
  AllocationProblem problem;
  std::vector<UserTerminal> eval_users;
};

CellContext make_cell(const NetworkScenario& base, const VideoStream& stream,
                      const RateModelParams& rp, int rbp,
                      const SweepOptions& options) {
  NetworkScenario sc = base;
  sc.tb_bandwidth_hz = rbp * kRbpBandwidthHz;
  RateModel model(rp.alpha, rp.beta, rp.sigma_min_db, rp.sigma_max_db,
                  sc.tb_bandwidth_hz);
  AllocationProblem pb = make_problem(stream, sc, model);
  std::vector<UserTerminal> eval = sc.users;
  eval.insert(eval.end(), options.extra_eval_users.begin(),
              options.extra_eval_users.end());
  return CellContext{std::move(sc), std::move(model), std::move(pb), std::move(eval)};
}

AllocationSolution dispatch(const AllocationProblem& pb, Strategy s, double budget) {
  switch (s) {
    case Strategy::kMspExact: return solve_msp_exact(pb, budget);
    case Strategy::kHmsp: return solve_hmsp(pb, budget);
    case Strategy::kUsp: return solve_usp(pb);
    case Strategy::kUpa: return solve_upa(pb, budget);
  }
  throw std::logic_error("unknown strategy");
}

}  // namespace

SweepResult run_sweep(const NetworkScenario& base, const VideoStream& stream,
                      const RateModelParams& rate_params,
                      const std::vector<double>& budgets_w,
                      const std::vector<int>& rbp_counts,
                      const std::vector<Strategy>& strategies,
                      const SweepOptions& options) {
  if (budgets_w.empty() || rbp_counts.empty() || strategies.empty()) {
    throw std::invalid_argument("sweep needs non-empty budget, TB-size and strategy lists");
  }
  std::map<int, CellContext> cells;
  for (int rbp : rbp_counts) {
    if (rbp < 1) throw std::invalid_argument("TB size must be >= 1 resource-block pair");
    if (!cells.count(rbp)) {
      cells.emplace(rbp, make_cell(base, stream, rate_params, rbp, options));
    }
  }

  SweepResult result;
  result.gop_budget_ttis = stream.gop_budget_ttis;
  result.layer_count = stream.layers.size();
  for (Strategy strat : strategies) {
    for (double budget : budgets_w) {
      for (int rbp : rbp_counts) {
        const CellContext& cell = cells.at(rbp);
        SweepRecord rec;
        rec.strategy = strat;
        rec.budget_w = budget;
        rec.rbp = rbp;
        AllocationSolution sol;
        try {
          sol = dispatch(cell.problem, strat, budget);
        } catch (const std::exception&) {
          rec.error = "solver_error";
          result.records.push_back(std::move(rec));
          continue;
        }
        rec.feasible = sol.feasible;
        rec.iterations = sol.iterations;
        rec.error = sol.error;
        if (sol.feasible) {
          // No unverified feasible flags reach the output.
          double budget_for_check =
              strat == Strategy::kUsp ? std::numeric_limits<double>::infinity() : budget;
          std::string why;
          if (!verify_solution(cell.problem, sol, budget_for_check, &why)) {
            rec.feasible = false;
            rec.error = "verification_failed";
          }
        }
        if (!sol.layers.empty()) {
          SleepReport sleep = sleep_period(sol, stream.gop_budget_ttis);
          rec.epsilon = sleep.epsilon;
          for (const auto& l : sol.layers) {
            rec.transmissions.push_back(l.transmissions);
            rec.powers.push_back(l.power_watts);
          }
          for (int lvl = 1; lvl <= static_cast<int>(stream.layers.size()); ++lvl) {
            rec.coverage_distance_m.push_back(coverage_distance(
                sol, stream, cell.scenario.users, cell.scenario, cell.model, lvl));
          }
        }
        result.records.push_back(std::move(rec));
      }
    }
  }
  return result;
}

std::vector<PsnrRow> psnr_profile(const AllocationSolution& sol,
                                  const VideoStream& stream,
                                  const std::vector<UserTerminal>& users,
                                  const NetworkScenario& scenario,
                                  const RateModel& model, bool independent_layers) {
  std::vector<UserTerminal> sorted = users;
  std::sort(sorted.begin(), sorted.end(), [](const UserTerminal& a, const UserTerminal& b) {
    double da = norm(a.position), db = norm(b.position);
    if (da != db) return da < db;
    return a.id < b.id;
  });
  std::vector<PsnrRow> rows;
  rows.reserve(sorted.size());
  for (const auto& u : sorted) {
    rows.push_back({norm(u.position), sol.strategy,
                    user_psnr(sol, stream, u, scenario, model, independent_layers)});
  }
  return rows;
}

}  // namespace sfncast
