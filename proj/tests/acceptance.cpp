// Acceptance suite: runs every top-level criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "instance_gen.hpp"
#include "sfncast/config.hpp"
#include "sfncast/driver.hpp"
#include "sfncast/evaluation.hpp"
#include "sfncast/report.hpp"
#include "sfncast/rlnc.hpp"
#include "sfncast/text.hpp"

using namespace sfncast;
namespace fs = std::filesystem;

namespace {

constexpr uint64_t kMcSeed = 1;
constexpr uint64_t kInstanceSeed = 2024;

std::string data_path(const std::string& name) {
  return std::string(SFNCAST_DATA_DIR) + "/" + name;
}

double enumerate_full_rank_fraction(int k, int n, uint32_t q) {
  FieldSpec spec(q);
  Field field(spec);
  CodingMatrix m(k, n, spec);
  const size_t cells = m.entries.size();
  uint64_t total = 1;
  for (size_t i = 0; i < cells; ++i) total *= q;
  uint64_t full = 0;
  for (uint64_t code = 0; code < total; ++code) {
    uint64_t v = code;
    for (size_t i = 0; i < cells; ++i) {
      m.entries[i] = static_cast<uint32_t>(v % q);
      v /= q;
    }
    if (matrix_rank(m, field) == k) ++full;
  }
  return static_cast<double>(full) / static_cast<double>(total);
}

int solution_objective(const AllocationSolution& sol) {
  int t = 0;
  for (const auto& l : sol.layers) t = std::max(t, l.transmissions);
  return t;
}

struct VideoSetup {
  ScenarioConfig cfg;
  VideoStream stream;
  NetworkScenario scenario;  // bandwidth is reset per cell
  RateModelParams params;
};

VideoSetup load_video(const std::string& file) {
  VideoSetup v{load_config(data_path(file)), {}, {}, {}};
  v.stream = stream_from_config(v.cfg);
  v.scenario = scenario_from_config(v.cfg, 9 * kRbpBandwidthHz);
  v.params = rate_params_from_config(v.cfg);
  return v;
}

const SweepRecord* find_record(const SweepResult& sweep, Strategy s, double budget,
                               int rbp) {
  for (const auto& r : sweep.records) {
    if (r.strategy == s && r.budget_w == budget && r.rbp == rbp) return &r;
  }
  return nullptr;
}

struct Harness {
  bool all_passed = true;

  template <typename F>
  void criterion(int number, const std::string& label, F&& body) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d %s (%.1fs) %s%s%s\n", number, ok ? "PASS" : "FAIL", secs,
                label.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    all_passed = all_passed && ok;
  }
};

bool criterion1(std::string& detail) {
  // Exhaustive: every GF(2) matrix shape up to 3x4.
  for (int k = 0; k <= 3; ++k) {
    for (int n = 0; n <= 4; ++n) {
      double expected = enumerate_full_rank_fraction(k, n, 2);
      double got = decode_probability(k, n, 2);
      if (std::abs(got - expected) > 1e-12) {
        detail = "exhaustive mismatch at K=" + std::to_string(k) + " N=" + std::to_string(n);
        return false;
      }
    }
  }
  // Monte Carlo within 3 binomial standard errors on the small grid.
  const int64_t trials = 100000;
  uint64_t cell = 0;
  double worst_z = 0;
  for (uint32_t q : {2u, 4u}) {
    for (int k = 1; k <= 6; ++k) {
      for (int n = 0; n <= 10; ++n) {
        double closed = decode_probability(k, n, q);
        double mc = monte_carlo_full_rank(k, n, FieldSpec(q), trials,
                                          kMcSeed + 0x9e3779b97f4a7c15ULL * ++cell);
        double se = std::sqrt(closed * (1.0 - closed) / trials);
        if (se == 0) {
          if (mc != closed) {
            detail = "degenerate cell mismatch at K=" + std::to_string(k) +
                     " N=" + std::to_string(n);
            return false;
          }
          continue;
        }
        double z = std::abs(mc - closed) / se;
        worst_z = std::max(worst_z, z);
        if (z > 3.0) {
          detail = "z=" + format_double(z) + " at q=" + std::to_string(q) +
                   " K=" + std::to_string(k) + " N=" + std::to_string(n);
          return false;
        }
      }
    }
  }
  detail = "worst |z| = " + format_double(worst_z);
  return true;
}

bool criterion2(std::string& detail) {
  std::mt19937_64 rng(kInstanceSeed);
  int feasible_matches = 0, infeasible_matches = 0;
  for (int i = 0; i < 200; ++i) {
    testgen::Instance inst = testgen::random_instance(rng);
    AllocationProblem pb(inst.stream, inst.model, inst.h);
    auto brute = testgen::brute_force_msp_objective(pb, inst.budget_w);
    AllocationSolution sol = solve_msp_exact(pb, inst.budget_w);
    if (brute.has_value() != sol.feasible) {
      detail = "feasibility mismatch on instance " + std::to_string(i);
      return false;
    }
    if (brute) {
      if (solution_objective(sol) != *brute) {
        detail = "objective mismatch on instance " + std::to_string(i);
        return false;
      }
      ++feasible_matches;
    } else {
      ++infeasible_matches;
    }
  }
  detail = std::to_string(feasible_matches) + " feasible / " +
           std::to_string(infeasible_matches) + " infeasible, all equal";
  return true;
}

bool criterion3(std::string& detail) {
  std::mt19937_64 rng(kInstanceSeed);
  int feasible = 0, usp_passthrough = 0;
  for (int i = 0; i < 200; ++i) {
    testgen::Instance inst = testgen::random_instance(rng);
    AllocationProblem pb(inst.stream, inst.model, inst.h);
    AllocationSolution greedy = solve_hmsp(pb, inst.budget_w);
    int64_t bound = 0;
    for (const auto& l : inst.stream.layers) {
      bound += inst.stream.gop_budget_ttis - l.k_symbols;
    }
    if (greedy.iterations > bound) {
      detail = "step bound exceeded on instance " + std::to_string(i);
      return false;
    }
    if (!greedy.feasible) continue;
    ++feasible;
    std::string why;
    if (!verify_solution(pb, greedy, inst.budget_w, &why)) {
      detail = "verifier rejected instance " + std::to_string(i) + ": " + why;
      return false;
    }
    AllocationSolution exact = solve_msp_exact(pb, inst.budget_w);
    if (!exact.feasible || solution_objective(greedy) < solution_objective(exact)) {
      detail = "heuristic beat the exact optimum on instance " + std::to_string(i);
      return false;
    }
    AllocationSolution usp = solve_usp(pb);
    if (usp.feasible && usp.total_power_watts <= inst.budget_w) {
      ++usp_passthrough;
      if (greedy.iterations != 0) {
        detail = "budget-satisfying unconstrained solution was altered on instance " +
                 std::to_string(i);
        return false;
      }
      for (size_t l = 0; l < usp.layers.size(); ++l) {
        if (usp.layers[l].transmissions != greedy.layers[l].transmissions ||
            usp.layers[l].power_watts != greedy.layers[l].power_watts) {
          detail = "unconstrained solution not returned unchanged on instance " +
                   std::to_string(i);
          return false;
        }
      }
    }
  }
  detail = std::to_string(feasible) + " feasible, " + std::to_string(usp_passthrough) +
           " returned the unconstrained solution unchanged";
  return true;
}

bool criterion4(std::string& detail) {
  // Random probes of the per-layer power curve.
  std::mt19937_64 rng(kInstanceSeed + 1);
  int probes = 0;
  while (probes < 1000) {
    testgen::Instance inst = testgen::random_instance(rng);
    AllocationProblem pb(inst.stream, inst.model, inst.h);
    for (size_t l = 0; l < inst.stream.layers.size() && probes < 1000; ++l) {
      int k = inst.stream.layers[l].k_symbols;
      if (k >= inst.stream.gop_budget_ttis) continue;
      int span = inst.stream.gop_budget_ttis - k;
      int t = k + static_cast<int>(rng() % span);
      double a = min_power_for_layer(pb, static_cast<int>(l), t);
      double b = min_power_for_layer(pb, static_cast<int>(l), t + 1);
      if (!(b <= a)) {
        detail = "curve increased at t=" + std::to_string(t);
        return false;
      }
      ++probes;
    }
  }

  // Bundled videos: epsilon of the exact strategy is non-decreasing in the
  // budget for every TB size.
  for (const char* file : {"videoA.cfg", "videoB.cfg"}) {
    VideoSetup v = load_video(file);
    SweepResult sweep = run_sweep(v.scenario, v.stream, v.params, v.cfg.budgets_w,
                                  v.cfg.rbp_counts, {Strategy::kMspExact});
    for (int rbp : v.cfg.rbp_counts) {
      double prev = -1;
      bool was_feasible = false;
      for (double b : v.cfg.budgets_w) {
        const SweepRecord* r = find_record(sweep, Strategy::kMspExact, b, rbp);
        if (!r) {
          detail = "missing sweep record";
          return false;
        }
        if (was_feasible && !r->feasible) {
          detail = std::string(file) + ": feasibility regressed with more budget";
          return false;
        }
        if (r->feasible) {
          if (r->epsilon < prev) {
            detail = std::string(file) + ": epsilon decreased with more budget at rbp=" +
                     std::to_string(rbp);
            return false;
          }
          prev = r->epsilon;
          was_feasible = true;
        }
      }
    }
  }
  return true;
}

bool criterion5(std::string& detail) {
  std::string summary;
  for (const char* file : {"videoA.cfg", "videoB.cfg"}) {
    VideoSetup v = load_video(file);
    SweepResult sweep =
        run_sweep(v.scenario, v.stream, v.params, v.cfg.budgets_w, v.cfg.rbp_counts,
                  {Strategy::kMspExact, Strategy::kHmsp, Strategy::kUpa});
    int joint = 0;
    double max_gain = 0;  // normalized sleep-period advantage over the equal split
    for (double b : v.cfg.budgets_w) {
      for (int rbp : v.cfg.rbp_counts) {
        const SweepRecord* msp = find_record(sweep, Strategy::kMspExact, b, rbp);
        const SweepRecord* hmsp = find_record(sweep, Strategy::kHmsp, b, rbp);
        const SweepRecord* upa = find_record(sweep, Strategy::kUpa, b, rbp);
        if (!msp || !hmsp || !upa) {
          detail = "missing sweep record";
          return false;
        }
        if (!(msp->feasible && hmsp->feasible && upa->feasible)) continue;
        ++joint;
        if (!(msp->epsilon >= upa->epsilon)) {
          detail = std::string(file) + ": exact below equal-split at budget " +
                   format_double(b) + " rbp " + std::to_string(rbp);
          return false;
        }
        if (!(hmsp->epsilon >= upa->epsilon - 1e-9)) {
          detail = std::string(file) + ": heuristic below equal-split at budget " +
                   format_double(b) + " rbp " + std::to_string(rbp);
          return false;
        }
        if (!(hmsp->epsilon <= msp->epsilon + 1e-12)) {
          detail = std::string(file) + ": heuristic above the exact optimum";
          return false;
        }
        max_gain = std::max(max_gain, msp->epsilon - upa->epsilon);
      }
    }
    if (joint == 0) {
      detail = std::string(file) + ": no cell with all three strategies feasible";
      return false;
    }
    if (!summary.empty()) summary += "; ";
    summary += std::string(file) + ": " + std::to_string(joint) +
               " joint-feasible cells, normalized sleep period up to " +
               format_double(std::round(max_gain * 1000) / 1000) +
               " above the equal split";
  }
  detail = summary;
  return true;
}

bool criterion6(std::string& detail) {
  std::string summary;
  for (const char* file : {"videoA.cfg", "videoB.cfg"}) {
    VideoSetup v = load_video(file);
    NetworkScenario sc = v.scenario;
    sc.tb_bandwidth_hz = 9 * kRbpBandwidthHz;
    RateModel model(v.params.alpha, v.params.beta, v.params.sigma_min_db,
                    v.params.sigma_max_db, sc.tb_bandwidth_hz);
    AllocationProblem pb = make_problem(v.stream, sc, model);
    AllocationSolution msp = solve_msp_exact(pb, 40);
    AllocationSolution upa = solve_upa(pb, 40);
    if (!msp.feasible) {
      detail = std::string(file) + ": exact solver infeasible at 40 W, 9 RBPs";
      return false;
    }
    for (int lvl = 1; lvl <= static_cast<int>(v.stream.layers.size()); ++lvl) {
      double dm = coverage_distance(msp, v.stream, sc.users, sc, model, lvl);
      double du = coverage_distance(upa, v.stream, sc.users, sc, model, lvl);
      if (!(dm >= du)) {
        detail = std::string(file) + ": level " + std::to_string(lvl) +
                 " coverage " + format_double(dm) + " m < " + format_double(du) + " m";
        return false;
      }
      if (lvl == static_cast<int>(v.stream.layers.size())) {
        if (!summary.empty()) summary += "; ";
        summary += std::string(file) + " top level: " + format_double(dm) + " m vs " +
                   format_double(du) + " m";
      }
    }
  }
  detail = summary;
  return true;
}

bool criterion7(std::string& detail) {
  const double w = 1.62e6;
  const double lo = 6.33, hi = 31.32;
  for (auto [alpha, beta] : {std::pair{0.17, 0.06}, std::pair{0.5, 0.2}, std::pair{1.0, 1.0}}) {
    std::vector<RateSample> samples;
    for (int i = 0; i < 25; ++i) {
      double s = (i == 24) ? hi : lo + (hi - lo) * i / 24.0;
      samples.push_back(
          {s, alpha * w * std::log2(1 + beta * std::pow(10.0, s / 10.0)), i + 1});
    }
    LadFit fit = fit_lad(samples, w, lo, hi);
    if (std::abs(fit.alpha - alpha) / alpha > 0.01 ||
        std::abs(fit.beta - beta) / beta > 0.01) {
      detail = "parameters not recovered for alpha=" + format_double(alpha) +
               " beta=" + format_double(beta) + " (got " + format_double(fit.alpha) +
               ", " + format_double(fit.beta) + ")";
      return false;
    }
    for (const auto& s : samples) {
      double fitted =
          fit.alpha * w * std::log2(1 + fit.beta * std::pow(10.0, s.sinr_db / 10.0));
      if (fitted > s.rate_bps * (1 + 1e-9)) {
        detail = "fitted curve exceeds a sample";
        return false;
      }
    }
  }
  return true;
}

bool criterion8(std::string& detail) {
  fs::path base = fs::temp_directory_path() / "sfncast_acceptance_determinism";
  fs::remove_all(base);
  fs::create_directories(base);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  for (const char* file : {"videoA.cfg", "videoB.cfg"}) {
    RunOverrides ov;
    std::ostringstream diag;
    int rc1 = cmd_run(data_path(file), (base / (std::string(file) + ".1")).string(), ov, diag);
    int rc2 = cmd_run(data_path(file), (base / (std::string(file) + ".2")).string(), ov, diag);
    if (rc1 == 1 || rc2 == 1) {
      detail = std::string(file) + ": run failed";
      return false;
    }
    for (const char* out : {"results.csv", "psnr.csv", "manifest.txt"}) {
      std::string a = slurp(base / (std::string(file) + ".1") / out);
      std::string b = slurp(base / (std::string(file) + ".2") / out);
      if (a.empty() || a != b) {
        detail = std::string(file) + ": " + out + " differs between identical runs";
        return false;
      }
    }
    // The full grid is 3 strategies x 7 budgets x 3 TB sizes plus the header.
    std::string results = slurp(base / (std::string(file) + ".1") / "results.csv");
    int lines = 0;
    for (char c : results) lines += c == '\n' ? 1 : 0;
    if (lines != 64) {
      detail = std::string(file) + ": expected 64 result lines, got " + std::to_string(lines);
      return false;
    }
  }
  fs::remove_all(base);
  return true;
}

}  // namespace

int main() {
  Harness h;
  h.criterion(1, "closed-form recovery probability matches exhaustive and Monte Carlo oracles",
              criterion1);
  h.criterion(2, "exact min-max solver equals brute-force enumeration on 200 instances",
              criterion2);
  h.criterion(3, "greedy heuristic meets its contract on 200 instances", criterion3);
  h.criterion(4, "power curve and sleep period monotonicity", criterion4);
  h.criterion(5, "sweep shape: exact and greedy dominate the equal split", criterion5);
  h.criterion(6, "coverage distance at 40 W, 9 RBPs favours the exact solver", criterion6);
  h.criterion(7, "constrained LAD fit recovers generating parameters within 1%", criterion7);
  h.criterion(8, "identical config and seed give byte-identical outputs", criterion8);
  if (!h.all_passed) {
    std::printf("acceptance: FAILURES PRESENT\n");
    return 1;
  }
  std::printf("acceptance: all criteria passed\n");
  return 0;
}
