#include "sfncast/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sfncast {
namespace {

double angle_of(Vec2 v) {
  double a = std::atan2(v.y, v.x);
  if (a < 0) a += 2 * M_PI;
  return a;
}

}  // namespace

double norm(Vec2 v) { return std::hypot(v.x, v.y); }

void validate(const NetworkScenario& sc) {
  if (sc.tb_bandwidth_hz <= 0) throw std::invalid_argument("TB bandwidth must be positive");
  if (sc.users.empty()) throw std::invalid_argument("scenario needs at least one user");
  bool any_sfn = false;
  for (const auto& s : sc.stations) any_sfn = any_sfn || s.in_sfn;
  if (!any_sfn) throw std::invalid_argument("scenario needs at least one SFN station");
  for (size_t i = 0; i < sc.stations.size(); ++i) {
    for (size_t j = i + 1; j < sc.stations.size(); ++j) {
      Vec2 d{sc.stations[i].position.x - sc.stations[j].position.x,
             sc.stations[i].position.y - sc.stations[j].position.y};
      if (norm(d) < 1e-9) throw std::invalid_argument("base station positions must be distinct");
    }
  }
  const auto& p = sc.params;
  if (p.pathloss_slope_db_per_decade < 0 || p.penetration_loss_db < 0 ||
      p.min_coupling_distance_m < 0) {
    throw std::invalid_argument("propagation losses and slopes must be non-negative");
  }
  if (!std::isfinite(p.noise_density_dbm_per_hz)) {
    throw std::invalid_argument("noise density must be finite");
  }
}

std::vector<Vec2> build_hex_layout(double isd_m, int rings) {
  if (isd_m <= 0) throw std::invalid_argument("inter-site distance must be positive");
  if (rings < 0) throw std::invalid_argument("ring count must be non-negative");
  std::vector<Vec2> out{{0, 0}};
  const double ax = isd_m;
  const double bx = isd_m / 2, by = isd_m * std::sqrt(3.0) / 2;
  for (int r = 1; r <= rings; ++r) {
    std::vector<Vec2> ring;
    for (int i = -r; i <= r; ++i) {
      for (int j = -r; j <= r; ++j) {
        int hexdist = (std::abs(i) + std::abs(j) + std::abs(i + j)) / 2;
        if (hexdist != r) continue;
        ring.push_back({i * ax + j * bx, j * by});
      }
    }
    std::sort(ring.begin(), ring.end(),
              [](Vec2 a, Vec2 b) { return angle_of(a) < angle_of(b); });
    out.insert(out.end(), ring.begin(), ring.end());
  }
  return out;
}

std::vector<UserTerminal> place_users_on_axis(int count, double spacing_m,
                                              double start_m, Vec2 axis_direction) {
  if (count < 1) throw std::invalid_argument("user count must be >= 1");
  if (spacing_m <= 0) throw std::invalid_argument("user spacing must be positive");
  if (start_m < 0) throw std::invalid_argument("start distance must be non-negative");
  const double len = norm(axis_direction);
  if (len <= 0) throw std::invalid_argument("axis direction must be nonzero");
  Vec2 dir{axis_direction.x / len, axis_direction.y / len};
  std::vector<UserTerminal> out;
  out.reserve(count);
  for (int u = 1; u <= count; ++u) {
    double d = start_m + (u - 1) * spacing_m;
    out.push_back({{dir.x * d, dir.y * d}, u});
  }
  return out;
}

double path_loss_db(double distance_m, const PropagationParams& params) {
  if (distance_m <= 0) throw std::invalid_argument("distance must be positive");
  double d = std::max(distance_m, params.min_coupling_distance_m);
  return params.pathloss_intercept_db +
         params.pathloss_slope_db_per_decade * std::log10(d / 1000.0);
}

double channel_gain_db(const UserTerminal& user, const BaseStation& station,
                       const PropagationParams& params) {
  Vec2 d{user.position.x - station.position.x, user.position.y - station.position.y};
  return params.tx_antenna_gain_db + params.rx_antenna_gain_db -
         path_loss_db(norm(d), params) - params.penetration_loss_db;
}

double channel_gain_linear(const UserTerminal& user, const BaseStation& station,
                           const PropagationParams& params) {
  return std::pow(10.0, channel_gain_db(user, station, params) / 10.0);
}

double noise_power_watts(const PropagationParams& params, double bandwidth_hz) {
  return std::pow(10.0, (params.noise_density_dbm_per_hz - 30.0) / 10.0) * bandwidth_hz;
}

double aggregate_channel_factor(const UserTerminal& user,
                                const NetworkScenario& scenario) {
  double interference_w = 0;
  for (const auto& s : scenario.stations) {
    if (!s.in_sfn) {
      interference_w +=
          channel_gain_linear(user, s, scenario.params) * s.interferer_tx_power_w;
    }
  }
  const double noise_w = noise_power_watts(scenario.params, scenario.tb_bandwidth_hz);
  double penalty_db = 0;
  if (scenario.params.per_link_interference_term && interference_w > 0) {
    // The per-link term is dimensionally ambiguous; read it as the
    // interference level above the noise floor so it penalizes SFN links.
    penalty_db = 10.0 * std::log10(interference_w / noise_w);
  }
  double signal = 0;
  for (const auto& s : scenario.stations) {
    if (s.in_sfn) {
      double gdb = channel_gain_db(user, s, scenario.params) - penalty_db;
      signal += std::pow(10.0, gdb / 10.0);
    }
  }
  return signal / (interference_w + noise_w);
}

std::vector<int> default_sfn_sites(const std::vector<Vec2>& sites, double isd_m,
                                   Vec2 axis_direction) {
  const double len = norm(axis_direction);
  if (len <= 0) throw std::invalid_argument("axis direction must be nonzero");
  Vec2 dir{axis_direction.x / len, axis_direction.y / len};
  std::vector<std::pair<double, int>> ranked;
  for (size_t i = 1; i < sites.size(); ++i) {
    if (std::abs(norm(sites[i]) - isd_m) > 1e-6 * isd_m) continue;  // ring 1 only
    double proj = sites[i].x * dir.x + sites[i].y * dir.y;
    double d;
    if (proj >= 0) {
      Vec2 perp{sites[i].x - proj * dir.x, sites[i].y - proj * dir.y};
      d = norm(perp);
    } else {
      d = norm(sites[i]);  // behind the ray start
    }
    ranked.emplace_back(d, static_cast<int>(i));
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<int> out{0};
  for (size_t i = 0; i < ranked.size() && out.size() < 4; ++i) {
    out.push_back(ranked[i].second);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace sfncast
