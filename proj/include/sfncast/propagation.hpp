#pragma once

#include <vector>

namespace sfncast {

struct Vec2 {
  double x = 0;
  double y = 0;
};

double norm(Vec2 v);

struct BaseStation {
  Vec2 position;
  bool in_sfn = false;
  double interferer_tx_power_w = 0;  // used only when in_sfn is false
};

struct UserTerminal {
  Vec2 position;
  int id = 0;
};

struct PropagationParams {
  double tx_antenna_gain_db = 14.0;
  double rx_antenna_gain_db = 0.0;
  double penetration_loss_db = 20.0;
  double noise_density_dbm_per_hz = -168.0;
  double pathloss_intercept_db = 128.1;
  double pathloss_slope_db_per_decade = 37.6;
  double min_coupling_distance_m = 35.0;
  // Experimental: subtract the aggregate interference level (in dBm) from
  // every SFN link gain before summing. Off by default; interference is
  // normally accounted once, in the SINR denominator.
  bool per_link_interference_term = false;
};

struct NetworkScenario {
  std::vector<BaseStation> stations;
  std::vector<UserTerminal> users;
  PropagationParams params;
  double tb_bandwidth_hz = 1.62e6;
};

void validate(const NetworkScenario& scenario);

/// Hexagonal lattice sites: the origin plus `rings` concentric rings with
/// 6r sites each, inter-site distance `isd_m`. Ring sites are ordered by
/// angle, so indices are stable.
std::vector<Vec2> build_hex_layout(double isd_m, int rings);

/// Users spaced along a ray from the origin; user u sits at
/// start_m + (u-1) * spacing_m. Ids run from 1.
std::vector<UserTerminal> place_users_on_axis(int count, double spacing_m,
                                              double start_m, Vec2 axis_direction);

/// Macro path loss intercept + slope*log10(d_km), distance clamped below at
/// the minimum coupling distance.
double path_loss_db(double distance_m, const PropagationParams& params);

double channel_gain_db(const UserTerminal& user, const BaseStation& station,
                       const PropagationParams& params);
double channel_gain_linear(const UserTerminal& user, const BaseStation& station,
                           const PropagationParams& params);

double noise_power_watts(const PropagationParams& params, double bandwidth_hz);

/// Per-user aggregate channel factor: SINR per watt of SFN transmit power.
/// Sum of SFN link gains over (interference power + noise power).
double aggregate_channel_factor(const UserTerminal& user,
                                const NetworkScenario& scenario);

/// Default SFN membership: the origin site plus its three ring-1 neighbours
/// closest to the user axis. Ties break on the lower site index.
std::vector<int> default_sfn_sites(const std::vector<Vec2>& sites, double isd_m,
                                   Vec2 axis_direction);

}  // namespace sfncast
