#pragma once

// Shared test helpers: small randomized allocation problems and brute-force
// reference solvers. Test-only code; the solvers under test never see it.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "sfncast/allocator.hpp"

namespace testgen {

struct Instance {
  sfncast::VideoStream stream;
  sfncast::RateModel model;
  std::vector<double> h;
  double budget_w;
};

inline Instance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> layers_dist(1, 3);
  std::uniform_int_distribution<int> dgop_dist(8, 15);
  std::uniform_int_distribution<int> users_dist(1, 5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Instance inst{
      sfncast::VideoStream{},
      sfncast::RateModel(0.1 + 0.9 * unit(rng), 0.01 + 0.99 * unit(rng),
                         0.0 + 6.0 * unit(rng), 16.0 + 20.0 * unit(rng),
                         1e5 + 2e6 * unit(rng)),
      {},
      0};

  inst.stream.gop_budget_ttis = dgop_dist(rng);
  const uint32_t qs[] = {2, 4, 256};
  inst.stream.field = sfncast::FieldSpec(qs[rng() % 3]);
  inst.stream.target_recovery_prob = 0.05 + 0.9 * unit(rng);
  inst.stream.tti_seconds = 1e-3;

  int layer_count = layers_dist(rng);
  std::uniform_int_distribution<int> k_dist(1, std::min(6, inst.stream.gop_budget_ttis));
  const double sizes[] = {256, 1024, 4096};
  for (int l = 0; l < layer_count; ++l) {
    sfncast::VideoLayer layer;
    layer.k_symbols = k_dist(rng);
    layer.symbol_size_bits = sizes[rng() % 3];
    layer.psnr_db = 25 + 5 * l;
    layer.coverage_target = 0.05 + 0.95 * unit(rng);
    inst.stream.layers.push_back(layer);
  }

  int users = users_dist(rng);
  for (int u = 0; u < users; ++u) {
    inst.h.push_back(std::pow(10.0, -3.0 + 5.0 * unit(rng)));
  }
  inst.budget_w = std::pow(10.0, -1.0 + 3.0 * unit(rng));
  return inst;
}

// Exhaustive reference for the min-max problem: enumerate every transmission
// vector in the box and keep the best feasible max.
inline std::optional<int> brute_force_msp_objective(const sfncast::AllocationProblem& pb,
                                                    double budget_w) {
  const int d_gop = pb.stream.gop_budget_ttis;
  const size_t layer_count = pb.stream.layers.size();
  std::vector<std::vector<double>> power(layer_count);
  for (size_t l = 0; l < layer_count; ++l) {
    for (int t = pb.stream.layers[l].k_symbols; t <= d_gop; ++t) {
      power[l].push_back(sfncast::min_power_for_layer(pb, static_cast<int>(l), t));
    }
  }
  std::vector<int> t(layer_count);
  std::optional<int> best;
  std::function<void(size_t, double, int)> walk = [&](size_t l, double sum, int tmax) {
    if (sum > budget_w) return;
    if (l == layer_count) {
      if (!best || tmax < *best) best = tmax;
      return;
    }
    const int k = pb.stream.layers[l].k_symbols;
    for (int tl = k; tl <= d_gop; ++tl) {
      double p = power[l][tl - k];
      if (std::isinf(p)) continue;
      walk(l + 1, sum + p, std::max(tmax, tl));
    }
  };
  walk(0, 0, 0);
  return best;
}

// Linear-scan reference for the equal-power strategy's per-layer minimum
// transmission count.
inline std::optional<int> scan_upa_transmissions(const sfncast::AllocationProblem& pb,
                                                 int layer, double power_w) {
  for (int t = pb.stream.layers[layer].k_symbols; t <= pb.stream.gop_budget_ttis; ++t) {
    if (sfncast::coverage_count(pb, layer, power_w, t) >= pb.users_needed[layer]) {
      return t;
    }
  }
  return std::nullopt;
}

}  // namespace testgen
