#include "sfncast/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sfncast/rlnc.hpp"

namespace sfncast {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int coverage_threshold(double coverage_target, size_t user_count) {
  // ceil(theta * U); products within 1e-9 of an integer count as that integer.
  double m = std::ceil(coverage_target * static_cast<double>(user_count) - 1e-9);
  return std::clamp(static_cast<int>(m), 1, static_cast<int>(user_count));
}

void check_layer_index(const AllocationProblem& pb, int layer) {
  if (layer < 0 || layer >= static_cast<int>(pb.stream.layers.size())) {
    throw std::invalid_argument("layer index out of range");
  }
}

AllocationSolution no_solution(Strategy strategy, std::string error) {
  AllocationSolution s;
  s.strategy = strategy;
  s.feasible = false;
  s.error = std::move(error);
  return s;
}

double total_power(const std::vector<LayerAllocation>& layers) {
  double sum = 0;
  for (const auto& l : layers) sum += l.power_watts;
  return sum;
}

}  // namespace

void validate(const VideoStream& stream) {
  if (stream.layers.empty()) throw std::invalid_argument("stream needs at least one layer");
  if (!(stream.target_recovery_prob > 0) || stream.target_recovery_prob > 1) {
    throw std::invalid_argument("target probability out of (0,1]");
  }
  if (!(stream.tti_seconds > 0)) throw std::invalid_argument("TTI duration must be positive");
  if (stream.gop_budget_ttis < 1) throw std::invalid_argument("GoP budget must be >= 1 TTI");
  for (const auto& l : stream.layers) {
    if (l.k_symbols < 1) throw std::invalid_argument("layer source block must be >= 1 symbol");
    if (!(l.symbol_size_bits > 0)) throw std::invalid_argument("symbol size must be positive");
    if (!(l.coverage_target > 0) || l.coverage_target > 1) {
      throw std::invalid_argument("coverage_target out of (0,1]");
    }
    if (l.k_symbols > stream.gop_budget_ttis) {
      throw std::invalid_argument("gop budget smaller than a layer's source block");
    }
  }
}

int derive_k_symbols(double bitrate_bps, int gop_budget_ttis, double tti_seconds,
                     double mbms_share, double symbol_size_bits) {
  if (!(bitrate_bps > 0)) throw std::invalid_argument("bitrate must be positive");
  if (!(mbms_share > 0) || mbms_share > 1) throw std::invalid_argument("MBMS share out of (0,1]");
  if (!(symbol_size_bits > 0)) throw std::invalid_argument("symbol size must be positive");
  if (gop_budget_ttis < 1 || !(tti_seconds > 0)) {
    throw std::invalid_argument("GoP budget and TTI duration must be positive");
  }
  double gop_seconds = gop_budget_ttis * tti_seconds / mbms_share;
  double k = std::ceil(bitrate_bps * gop_seconds / symbol_size_bits);
  if (k >= 1e9) {
    throw std::invalid_argument("layer bitrate implies an impossibly large source block");
  }
  return static_cast<int>(k);
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::kMspExact: return "msp";
    case Strategy::kHmsp: return "hmsp";
    case Strategy::kUsp: return "usp";
    case Strategy::kUpa: return "upa";
  }
  return "?";
}

std::optional<Strategy> strategy_from_string(const std::string& name) {
  if (name == "msp") return Strategy::kMspExact;
  if (name == "hmsp") return Strategy::kHmsp;
  if (name == "usp") return Strategy::kUsp;
  if (name == "upa") return Strategy::kUpa;
  return std::nullopt;
}

AllocationProblem::AllocationProblem(VideoStream stream_in, RateModel model_in,
                                     std::vector<double> h_in)
    : stream(std::move(stream_in)), model(std::move(model_in)), h_users(std::move(h_in)) {
  validate(stream);
  if (h_users.empty()) throw std::invalid_argument("need at least one user");
  for (double h : h_users) {
    if (!(h > 0)) throw std::invalid_argument("aggregate channel factors must be positive");
  }
  symbols_needed.reserve(stream.layers.size());
  users_needed.reserve(stream.layers.size());
  for (const auto& l : stream.layers) {
    symbols_needed.push_back(
        min_symbols_for_target(l.k_symbols, stream.field, stream.target_recovery_prob));
    users_needed.push_back(coverage_threshold(l.coverage_target, h_users.size()));
  }
}

AllocationProblem make_problem(const VideoStream& stream,
                               const NetworkScenario& scenario,
                               const RateModel& model) {
  validate(scenario);
  std::vector<double> h;
  h.reserve(scenario.users.size());
  for (const auto& u : scenario.users) h.push_back(aggregate_channel_factor(u, scenario));
  return AllocationProblem(stream, model, std::move(h));
}

std::optional<int64_t> min_symbols_for_target(int64_t k_symbols, FieldSpec field,
                                              double target_prob) {
  if (k_symbols < 1) throw std::invalid_argument("source block must be >= 1 symbol");
  if (!(target_prob > 0) || target_prob > 1) {
    throw std::invalid_argument("target probability out of (0,1]");
  }
  if (target_prob == 1.0) return std::nullopt;  // the product never reaches 1
  int64_t n = k_symbols;
  while (decode_probability(k_symbols, n, field.order()) < target_prob) {
    ++n;
    if (n - k_symbols > 10'000'000) {
      throw std::logic_error("symbol search failed to converge");
    }
  }
  return n;
}

double min_power_for_layer(const AllocationProblem& pb, int layer, int t) {
  check_layer_index(pb, layer);
  const VideoLayer& ly = pb.stream.layers[layer];
  if (t < ly.k_symbols || t > pb.stream.gop_budget_ttis) {
    throw std::invalid_argument("transmission count out of [K, gop budget]");
  }
  if (!pb.symbols_needed[layer]) return kInf;
  const double needed = static_cast<double>(*pb.symbols_needed[layer]);
  const double rate_target =
      needed * ly.symbol_size_bits / (pb.stream.tti_seconds * static_cast<double>(t));

  std::vector<double> powers;
  powers.reserve(pb.h_users.size());
  for (double h : pb.h_users) {
    if (auto p = pb.model.min_power_for_rate(rate_target, h)) powers.push_back(*p);
  }
  const int m = pb.users_needed[layer];
  if (static_cast<int>(powers.size()) < m) return kInf;
  std::nth_element(powers.begin(), powers.begin() + (m - 1), powers.end());
  return powers[m - 1];
}

int coverage_count(const AllocationProblem& pb, int layer, double power_watts, int t) {
  check_layer_index(pb, layer);
  const VideoLayer& ly = pb.stream.layers[layer];
  int count = 0;
  for (double h : pb.h_users) {
    double rate = pb.model.rate_bps(power_watts, h);
    int64_t n = received_symbols(rate, t, ly.symbol_size_bits, pb.stream.tti_seconds);
    double g = decode_probability(ly.k_symbols, n, pb.stream.field.order());
    if (g >= pb.stream.target_recovery_prob) ++count;
  }
  return count;
}

AllocationSolution solve_usp(const AllocationProblem& pb) {
  AllocationSolution sol;
  sol.strategy = Strategy::kUsp;
  sol.feasible = true;
  const int d_gop = pb.stream.gop_budget_ttis;
  for (size_t l = 0; l < pb.stream.layers.size(); ++l) {
    const int k = pb.stream.layers[l].k_symbols;
    if (min_power_for_layer(pb, static_cast<int>(l), d_gop) == kInf) {
      sol.feasible = false;
      sol.error = "uncoverable";
      sol.coverage_failed_layers.push_back(static_cast<int>(l));
      continue;
    }
    // Finiteness is monotone in t, so the boundary is binary-searchable.
    int lo = k, hi = d_gop;
    while (lo < hi) {
      int mid = lo + (hi - lo) / 2;
      if (min_power_for_layer(pb, static_cast<int>(l), mid) < kInf) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    sol.layers.push_back({min_power_for_layer(pb, static_cast<int>(l), lo), lo});
  }
  if (!sol.feasible) {
    sol.layers.clear();
    return sol;
  }
  sol.total_power_watts = total_power(sol.layers);
  return sol;
}

AllocationSolution solve_usp_linear_scan(const AllocationProblem& pb) {
  AllocationSolution sol;
  sol.strategy = Strategy::kUsp;
  sol.feasible = true;
  const int d_gop = pb.stream.gop_budget_ttis;
  for (size_t l = 0; l < pb.stream.layers.size(); ++l) {
    bool found = false;
    for (int t = pb.stream.layers[l].k_symbols; t <= d_gop && !found; ++t) {
      double p = min_power_for_layer(pb, static_cast<int>(l), t);
      if (p < kInf) {
        sol.layers.push_back({p, t});
        found = true;
      }
    }
    if (!found) {
      sol.feasible = false;
      sol.error = "uncoverable";
      sol.coverage_failed_layers.push_back(static_cast<int>(l));
    }
  }
  if (!sol.feasible) {
    sol.layers.clear();
    return sol;
  }
  sol.total_power_watts = total_power(sol.layers);
  return sol;
}

AllocationSolution solve_msp_exact(const AllocationProblem& pb, double budget_w) {
  if (!(budget_w > 0)) throw std::invalid_argument("power budget must be positive");
  AllocationSolution usp = solve_usp(pb);
  if (!usp.feasible) {
    usp.strategy = Strategy::kMspExact;
    return usp;
  }
  const int d_gop = pb.stream.gop_budget_ttis;
  const size_t layer_count = pb.stream.layers.size();
  int t_min = 1;
  for (const auto& l : pb.stream.layers) t_min = std::max(t_min, l.k_symbols);

  auto budget_ok = [&](int t) {
    double sum = 0;
    for (size_t l = 0; l < layer_count; ++l) {
      sum += min_power_for_layer(pb, static_cast<int>(l), t);
      if (sum > budget_w) return false;
    }
    return true;
  };

  if (!budget_ok(d_gop)) {
    return no_solution(Strategy::kMspExact, "infeasible_budget");
  }
  // Every per-layer minimum power is non-increasing in t, so budget
  // feasibility is monotone in the common transmission count.
  int lo = t_min, hi = d_gop;
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    if (budget_ok(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  AllocationSolution sol;
  sol.strategy = Strategy::kMspExact;
  sol.feasible = true;
  for (size_t l = 0; l < layer_count; ++l) {
    sol.layers.push_back({min_power_for_layer(pb, static_cast<int>(l), lo), lo});
  }
  sol.total_power_watts = total_power(sol.layers);
  return sol;
}

AllocationSolution solve_hmsp(const AllocationProblem& pb, double budget_w) {
  if (!(budget_w > 0)) throw std::invalid_argument("power budget must be positive");
  AllocationSolution sol = solve_usp(pb);
  sol.strategy = Strategy::kHmsp;
  if (!sol.feasible) return sol;

  const int d_gop = pb.stream.gop_budget_ttis;
  const size_t layer_count = pb.stream.layers.size();
  int64_t max_steps = 0;
  for (const auto& l : pb.stream.layers) max_steps += d_gop - l.k_symbols;

  while (total_power(sol.layers) > budget_w) {
    int best = -1;
    int best_t = std::numeric_limits<int>::max();
    for (size_t l = 0; l < layer_count; ++l) {
      int cand = sol.layers[l].transmissions + 1;
      if (cand <= d_gop && cand < best_t) {
        best_t = cand;
        best = static_cast<int>(l);
      }
    }
    if (best < 0) {
      return no_solution(Strategy::kHmsp, "no_solution");
    }
    sol.layers[best].transmissions = best_t;
    sol.layers[best].power_watts = min_power_for_layer(pb, best, best_t);
    ++sol.iterations;
    if (sol.iterations > max_steps) {
      throw std::logic_error("greedy allocation exceeded its step bound");
    }
  }
  sol.total_power_watts = total_power(sol.layers);
  sol.feasible = true;
  sol.error.clear();
  return sol;
}

AllocationSolution solve_upa(const AllocationProblem& pb, double budget_w) {
  if (!(budget_w > 0)) throw std::invalid_argument("power budget must be positive");
  const size_t layer_count = pb.stream.layers.size();
  const double p_layer = budget_w / static_cast<double>(layer_count);
  const int d_gop = pb.stream.gop_budget_ttis;

  AllocationSolution sol;
  sol.strategy = Strategy::kUpa;
  for (size_t l = 0; l < layer_count; ++l) {
    const int k = pb.stream.layers[l].k_symbols;
    const int m = pb.users_needed[l];
    if (coverage_count(pb, static_cast<int>(l), p_layer, d_gop) < m) {
      // Best effort: spend the whole GoP on it and flag the shortfall.
      sol.layers.push_back({p_layer, d_gop});
      sol.coverage_failed_layers.push_back(static_cast<int>(l));
      continue;
    }
    int lo = k, hi = d_gop;
    while (lo < hi) {
      int mid = lo + (hi - lo) / 2;
      if (coverage_count(pb, static_cast<int>(l), p_layer, mid) >= m) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    sol.layers.push_back({p_layer, lo});
  }
  sol.total_power_watts = total_power(sol.layers);
  sol.feasible = sol.coverage_failed_layers.empty();
  if (!sol.feasible) sol.error = "coverage";
  return sol;
}

bool verify_solution(const AllocationProblem& pb, const AllocationSolution& sol,
                     double budget_w, std::string* reason) {
  auto fail = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  const size_t layer_count = pb.stream.layers.size();
  if (sol.layers.size() != layer_count) return fail("layer count mismatch");
  double sum = 0;
  for (size_t l = 0; l < layer_count; ++l) {
    const auto& a = sol.layers[l];
    const auto& ly = pb.stream.layers[l];
    if (a.transmissions < ly.k_symbols || a.transmissions > pb.stream.gop_budget_ttis) {
      return fail("transmissions out of range at layer " + std::to_string(l + 1));
    }
    if (!(a.power_watts > 0)) {
      return fail("non-positive power at layer " + std::to_string(l + 1));
    }
    sum += a.power_watts;
    int covered = coverage_count(pb, static_cast<int>(l), a.power_watts, a.transmissions);
    if (covered < pb.users_needed[l]) {
      return fail("coverage shortfall at layer " + std::to_string(l + 1));
    }
  }
  if (sum > budget_w * (1.0 + 1e-9)) return fail("power budget exceeded");
  return true;
}

}  // namespace sfncast
