#pragma once

#include <string>
#include <vector>

#include "sfncast/allocator.hpp"

namespace sfncast {

inline constexpr double kRbpBandwidthHz = 180e3;  // one resource-block pair

struct SleepReport {
  int xi_ttis = 0;    // idle TTIs after the slowest layer finishes
  double epsilon = 0; // xi / gop budget
};

SleepReport sleep_period(const AllocationSolution& sol, int gop_budget_ttis);

/// Probability that one user recovers the given layer under the solution's
/// power and transmission count.
double layer_recovery_probability(const AllocationProblem& problem,
                                  const AllocationSolution& sol, int layer,
                                  double h_user);

/// Best quality level weighted by its recovery probability. By default a
/// level needs all layers up to it (cumulative product); the independent
/// variant weighs each level by its own layer probability only.
double psnr_from_probabilities(const VideoStream& stream,
                               const std::vector<double>& layer_probs,
                               bool independent_layers = false);

double user_psnr(const AllocationSolution& sol, const VideoStream& stream,
                 const UserTerminal& user, const NetworkScenario& scenario,
                 const RateModel& model, bool independent_layers = false);

/// Farthest user whose cumulative recovery probability of layers 1..qos_level
/// meets the stream's target; 0 when nobody qualifies. Level 0 is always
/// covered.
double coverage_distance(const AllocationSolution& sol, const VideoStream& stream,
                         const std::vector<UserTerminal>& users,
                         const NetworkScenario& scenario, const RateModel& model,
                         int qos_level);

struct SweepRecord {
  Strategy strategy = Strategy::kUsp;
  double budget_w = 0;
  int rbp = 0;
  bool feasible = false;
  double epsilon = 0;
  std::vector<int> transmissions;  // empty when no allocation exists
  std::vector<double> powers;
  int64_t iterations = 0;
  std::string error;
  std::vector<double> coverage_distance_m;  // per QoS level 1..L

  bool has_allocation() const { return !transmissions.empty(); }
};

struct SweepResult {
  std::vector<SweepRecord> records;
  int gop_budget_ttis = 0;
  size_t layer_count = 0;
};

struct SweepOptions {
  std::vector<UserTerminal> extra_eval_users;  // excluded from optimization
  bool psnr_independent_layers = false;
};

/// One record per (strategy, budget, TB size) cell. Each cell rebuilds the
/// rate model and noise with W = rbp * 180 kHz; feasible solutions are
/// re-verified before being recorded; failures record an error tag instead of
/// aborting the sweep.
SweepResult run_sweep(const NetworkScenario& base, const VideoStream& stream,
                      const RateModelParams& rate_params,
                      const std::vector<double>& budgets_w,
                      const std::vector<int>& rbp_counts,
                      const std::vector<Strategy>& strategies,
                      const SweepOptions& options = {});

struct PsnrRow {
  double distance_m = 0;
  Strategy strategy = Strategy::kUsp;
  double psnr_db = 0;
};

/// Per-user quality profile for one solved cell, sorted by distance.
std::vector<PsnrRow> psnr_profile(const AllocationSolution& sol,
                                  const VideoStream& stream,
                                  const std::vector<UserTerminal>& users,
                                  const NetworkScenario& scenario,
                                  const RateModel& model,
                                  bool independent_layers = false);

}  // namespace sfncast
