#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sfncast/gf.hpp"
#include "sfncast/propagation.hpp"
#include "sfncast/rate_model.hpp"

namespace sfncast {

struct VideoLayer {
  int k_symbols = 1;              // source block size
  double symbol_size_bits = 4096;  // coded element size
  double bitrate_bps = 0;          // informational once k_symbols is fixed
  double psnr_db = 0;              // quality when this and all lower layers decode
  double coverage_target = 1.0;    // required fraction of users
};

struct VideoStream {
  std::vector<VideoLayer> layers;  // base layer first
  int gop_budget_ttis = 320;
  FieldSpec field{256};
  double target_recovery_prob = 0.1;  // per-user probability threshold
  double tti_seconds = 1e-3;
};

void validate(const VideoStream& stream);

/// Source block size implied by a layer bitrate: the GoP spans
/// gop_budget_ttis * tti / mbms_share seconds of video, whose bits are split
/// into symbols of symbol_size_bits.
int derive_k_symbols(double bitrate_bps, int gop_budget_ttis, double tti_seconds,
                     double mbms_share, double symbol_size_bits);

enum class Strategy { kMspExact, kHmsp, kUsp, kUpa };
const char* to_string(Strategy s);
std::optional<Strategy> strategy_from_string(const std::string& name);

struct LayerAllocation {
  double power_watts = 0;
  int transmissions = 0;
};

struct AllocationSolution {
  Strategy strategy = Strategy::kUsp;
  bool feasible = false;
  std::vector<LayerAllocation> layers;  // empty when no allocation exists
  double total_power_watts = 0;
  int64_t iterations = 0;  // committed increments (greedy solver only)
  std::vector<int> coverage_failed_layers;
  std::string error;  // short tag when not feasible
};

/// Immutable per-run inputs: the stream, the rate model and the per-user
/// aggregate channel factors, plus derived per-layer requirements.
struct AllocationProblem {
  AllocationProblem(VideoStream stream, RateModel model, std::vector<double> h_users);

  VideoStream stream;
  RateModel model;
  std::vector<double> h_users;
  std::vector<std::optional<int64_t>> symbols_needed;  // per layer; empty = unreachable
  std::vector<int> users_needed;                       // ceil(theta * U)
};

AllocationProblem make_problem(const VideoStream& stream,
                               const NetworkScenario& scenario,
                               const RateModel& model);

/// Smallest N >= K with decode probability >= target_prob. Empty for
/// target_prob = 1, which the product never reaches.
std::optional<int64_t> min_symbols_for_target(int64_t k_symbols, FieldSpec field,
                                              double target_prob);

/// Minimum transmit power that satisfies the layer coverage constraint with t
/// transmissions; +infinity when no power suffices. Non-increasing in t.
double min_power_for_layer(const AllocationProblem& problem, int layer, int t);

/// Users whose recovery probability meets the target at this power and
/// transmission count.
int coverage_count(const AllocationProblem& problem, int layer, double power_watts,
                   int t);

/// Per-layer minimum transmissions with unconstrained power (binary search on
/// the feasibility boundary; a linear-scan twin exists for verification).
AllocationSolution solve_usp(const AllocationProblem& problem);
AllocationSolution solve_usp_linear_scan(const AllocationProblem& problem);

/// Exact min-max transmissions under the total power budget: binary search
/// over the common transmission count T, feasible iff the summed per-layer
/// minimum powers fit the budget.
AllocationSolution solve_msp_exact(const AllocationProblem& problem,
                                   double power_budget_w);

/// Greedy heuristic: start from the unconstrained optimum and repeatedly
/// grant one extra transmission to the layer with the smallest incremented
/// count (ties to the lowest layer index) until the budget is met.
AllocationSolution solve_hmsp(const AllocationProblem& problem,
                              double power_budget_w);

/// Equal power split across layers; per layer the smallest transmission count
/// that meets coverage, best-effort at the GoP budget otherwise.
AllocationSolution solve_upa(const AllocationProblem& problem,
                             double power_budget_w);

/// Independent re-check of a solution against the coverage, bound and budget
/// constraints via the forward rate/decoding chain. Budget comparison allows
/// 1e-9 relative slack for accumulated rounding.
bool verify_solution(const AllocationProblem& problem, const AllocationSolution& sol,
                     double power_budget_w, std::string* reason = nullptr);

}  // namespace sfncast
