#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfncast/allocator.hpp"
#include "sfncast/propagation.hpp"
#include "sfncast/rate_model.hpp"

namespace sfncast {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat sectioned key=value scenario description. Defaults reproduce the
/// reference deployment: 19 sites in two rings at 500 m spacing with a 4-site
/// SFN, 80 users on the sector axis from 90 m at 2 m spacing, and the bundled
/// three-layer video.
struct ScenarioConfig {
  // [deployment]
  double isd_m = 500;
  int rings = 2;
  std::vector<int> sfn_site_indices;  // empty: origin + 3 neighbours on the axis
  double interferer_power_w = 40;

  // [users]
  int user_count = 80;
  double user_spacing_m = 2;
  double user_start_m = 90;
  std::vector<double> extra_eval_positions_m;

  // [propagation]
  double tx_antenna_gain_db = 14;
  double rx_antenna_gain_db = 0;
  double penetration_loss_db = 20;
  double noise_density_dbm_per_hz = -168;
  double pathloss_intercept_db = 128.1;
  double pathloss_slope_db_per_decade = 37.6;
  double min_coupling_distance_m = 35;

  // [rate_model]
  double alpha = 0.17;
  double beta = 0.06;
  double sigma_min_db = 6.33;
  double sigma_max_db = 31.32;
  std::string samples_path;     // when set, fit alpha/beta from this file
  double samples_w_hz = 1.62e6; // bandwidth the samples were taken at

  // [video]
  std::string video_name = "A";
  std::vector<double> bitrate_bps = {117100, 402500, 1506300};
  std::vector<int> k_symbols;  // overrides bitrate-derived source blocks
  std::vector<double> psnr_db = {29.94, 34.78, 40.73};
  std::vector<double> theta = {0.3, 0.6, 0.9};
  double symbol_size_bits = 4096;
  uint32_t q = 256;
  double phi = 0.1;
  int d_gop_ttis = 320;
  double t_mbms = 0.6;
  double tti_s = 1e-3;

  // [run]
  std::vector<std::string> strategies = {"msp", "hmsp", "upa"};
  std::vector<double> budgets_w = {20, 30, 40, 50, 60, 70, 80};
  std::vector<int> rbp_counts = {6, 9, 12};
  uint64_t seed = 1;
  double psnr_budget_w = 40;
  int psnr_rbp = 9;

  // set by command-line flags, not by the file
  bool per_link_interference_term = false;
  bool invert_fit_constraint = false;
};

/// Parse + validate. Unknown sections or keys are rejected by name; parse
/// errors carry the source line.
ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config(std::istream& in, const std::string& source_name);
void validate_config(const ScenarioConfig& cfg);

NetworkScenario scenario_from_config(const ScenarioConfig& cfg, double tb_bandwidth_hz);
VideoStream stream_from_config(const ScenarioConfig& cfg);
RateModelParams rate_params_from_config(const ScenarioConfig& cfg);
std::vector<UserTerminal> extra_eval_users_from_config(const ScenarioConfig& cfg);
std::vector<Strategy> strategies_from_config(const ScenarioConfig& cfg);

}  // namespace sfncast
