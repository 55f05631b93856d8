#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sfncast/allocator.hpp"

namespace sfncast {

struct RunOverrides {
  std::optional<uint64_t> seed;
  std::optional<Strategy> strategy;  // narrow the sweep to one strategy
  std::optional<double> budget_w;    // narrow to one budget
  std::optional<int> rbp;            // narrow to one TB size
  bool psnr_independent_layers = false;
  bool invert_constraint = false;
  bool per_link_interference_term = false;
};

/// Runs the sweep described by the config and writes results.csv, psnr.csv and
/// manifest.txt into out_dir. Returns 0 on success, 2 when any sweep cell is
/// infeasible, 1 on configuration errors.
int cmd_run(const std::string& config_path, const std::string& out_dir,
            const RunOverrides& overrides, std::ostream& diag);

/// Fits the rate-curve correction factors to a sample file and writes
/// model_card.txt into out_dir. Returns 0 on success, 1 on errors.
int cmd_fit(const std::string& samples_path, double tb_bandwidth_hz,
            double sigma_min_db, double sigma_max_db, bool invert_constraint,
            const std::string& out_dir, std::ostream& diag);

/// Tabulates closed-form vs Monte Carlo recovery probabilities and writes
/// rlnc_validation.txt into out_dir. Returns 0 when every |z| <= 4, else 2;
/// 1 on errors.
int cmd_validate_rlnc(int kmax, int nmax, const std::vector<uint32_t>& field_orders,
                      int64_t trials, uint64_t seed, const std::string& out_dir,
                      std::ostream& diag);

}  // namespace sfncast
