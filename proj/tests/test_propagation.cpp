#include <algorithm>
#include <cmath>

#include <stdexcept>

#include "doctest.h"
#include "sfncast/propagation.hpp"

using namespace sfncast;

TEST_CASE("hex layout ring counts and distances") {
  CHECK(build_hex_layout(500, 0).size() == 1);
  auto one = build_hex_layout(500, 1);
  REQUIRE(one.size() == 7);
  for (size_t i = 1; i < one.size(); ++i) {
    CHECK(norm(one[i]) == doctest::Approx(500.0).epsilon(1e-12));
  }
  auto two = build_hex_layout(500, 2);
  REQUIRE(two.size() == 19);
  int at_866 = 0, at_1000 = 0;
  for (size_t i = 7; i < two.size(); ++i) {
    double d = norm(two[i]);
    if (std::abs(d - 500 * std::sqrt(3.0)) < 1e-6) ++at_866;
    if (std::abs(d - 1000) < 1e-6) ++at_1000;
  }
  CHECK(at_866 == 6);
  CHECK(at_1000 == 6);
  CHECK_THROWS_AS(build_hex_layout(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_hex_layout(500, -1), std::invalid_argument);
}

TEST_CASE("users on the sector axis") {
  auto users = place_users_on_axis(80, 2, 90, {1, 0});
  REQUIRE(users.size() == 80);
  CHECK(users.front().id == 1);
  CHECK(norm(users.front().position) == doctest::Approx(90.0));
  CHECK(norm(users.back().position) == doctest::Approx(248.0));
  auto single = place_users_on_axis(1, 2, 90, {1, 0});
  REQUIRE(single.size() == 1);
  CHECK(norm(single[0].position) == doctest::Approx(90.0));
  CHECK_THROWS_AS(place_users_on_axis(0, 2, 90, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(place_users_on_axis(5, 2, 90, {0, 0}), std::invalid_argument);
}

TEST_CASE("macro path loss") {
  PropagationParams p;
  CHECK(path_loss_db(500, p) == doctest::Approx(116.7812722).epsilon(1e-9));
  CHECK(path_loss_db(1000, p) == doctest::Approx(128.1).epsilon(1e-12));
  CHECK(path_loss_db(10, p) == doctest::Approx(path_loss_db(35, p)).epsilon(1e-12));
  CHECK_THROWS_AS(path_loss_db(0, p), std::invalid_argument);
  CHECK_THROWS_AS(path_loss_db(-5, p), std::invalid_argument);
}

TEST_CASE("channel gain chain") {
  PropagationParams p;  // 14 dBi tx, 0 dBi rx, 20 dB penetration
  UserTerminal u{{500, 0}, 1};
  BaseStation b{{0, 0}, true, 0};
  CHECK(channel_gain_db(u, b, p) == doctest::Approx(-122.7812722).epsilon(1e-9));
  CHECK(channel_gain_linear(u, b, p) == doctest::Approx(5.2708e-13).epsilon(1e-3));

  PropagationParams ident;
  ident.tx_antenna_gain_db = 0;
  ident.rx_antenna_gain_db = 0;
  ident.penetration_loss_db = 0;
  ident.pathloss_intercept_db = 0;
  ident.pathloss_slope_db_per_decade = 0;
  CHECK(channel_gain_linear(u, b, ident) == doctest::Approx(1.0).epsilon(1e-12));

  UserTerminal far{{1000, 0}, 2};
  double drop_db = channel_gain_db(u, b, p) - channel_gain_db(far, b, p);
  CHECK(drop_db == doctest::Approx(37.6 * std::log10(2.0)).epsilon(1e-9));
}

TEST_CASE("noise power over the TB bandwidth") {
  PropagationParams p;
  CHECK(noise_power_watts(p, 1.62e6) ==
        doctest::Approx(2.5675269717870045e-14).epsilon(1e-12));
}

TEST_CASE("aggregate channel factor") {
  PropagationParams p;
  NetworkScenario sc;
  sc.tb_bandwidth_hz = 1.62e6;
  sc.params = p;
  sc.users = {{{200, 0}, 1}};
  sc.stations = {{{0, 0}, true, 0}};
  const UserTerminal& u = sc.users[0];

  double h1 = aggregate_channel_factor(u, sc);
  double expected = channel_gain_linear(u, sc.stations[0], p) / noise_power_watts(p, 1.62e6);
  CHECK(h1 == doctest::Approx(expected).epsilon(1e-12));

  // Two equidistant SFN stations double the factor.
  NetworkScenario sc2 = sc;
  sc2.stations.push_back({{400, 0}, true, 0});
  CHECK(aggregate_channel_factor(u, sc2) == doctest::Approx(2 * h1).epsilon(1e-12));

  // A stronger interferer strictly lowers it.
  NetworkScenario sc3 = sc;
  sc3.stations.push_back({{600, 0}, false, 20});
  double with20 = aggregate_channel_factor(u, sc3);
  sc3.stations.back().interferer_tx_power_w = 40;
  double with40 = aggregate_channel_factor(u, sc3);
  CHECK(with20 < h1);
  CHECK(with40 < with20);

  // Invariant under station reordering.
  NetworkScenario sc4 = sc3;
  std::reverse(sc4.stations.begin(), sc4.stations.end());
  CHECK(aggregate_channel_factor(u, sc4) == doctest::Approx(with40).epsilon(1e-12));
}

TEST_CASE("scenario validation") {
  NetworkScenario sc;
  sc.users = {{{100, 0}, 1}};
  sc.stations = {{{0, 0}, false, 40}};
  CHECK_THROWS_AS(validate(sc), std::invalid_argument);  // no SFN station
  sc.stations[0].in_sfn = true;
  CHECK_NOTHROW(validate(sc));
  sc.stations.push_back({{0, 0}, true, 0});
  CHECK_THROWS_AS(validate(sc), std::invalid_argument);  // duplicate positions
}

TEST_CASE("default SFN membership follows the user axis") {
  auto sites = build_hex_layout(500, 2);
  auto sfn = default_sfn_sites(sites, 500, {1, 0});
  REQUIRE(sfn.size() == 4);
  CHECK(sfn[0] == 0);
  // Expect the origin, the site straight down the axis, and the two flanking
  // sites adjacent to both.
  int straight = 0, flanking = 0;
  for (size_t i = 1; i < sfn.size(); ++i) {
    Vec2 s = sites[sfn[i]];
    if (std::abs(s.x - 500) < 1e-6 && std::abs(s.y) < 1e-6) ++straight;
    if (std::abs(s.x - 250) < 1e-6 && std::abs(std::abs(s.y) - 500 * std::sqrt(3.0) / 2) < 1e-6) {
      ++flanking;
    }
  }
  CHECK(straight == 1);
  CHECK(flanking == 2);
}

TEST_CASE("path loss to the nearest SFN station grows along the axis") {
  auto sites = build_hex_layout(500, 2);
  auto sfn = default_sfn_sites(sites, 500, {1, 0});
  PropagationParams p;
  auto users = place_users_on_axis(80, 2, 90, {1, 0});
  double prev = 0;
  for (const auto& u : users) {
    double best = 1e9;
    for (int idx : sfn) {
      BaseStation b{sites[idx], true, 0};
      best = std::min(best, path_loss_db(norm({u.position.x - b.position.x,
                                               u.position.y - b.position.y}),
                                         p));
    }
    CHECK(best >= prev);
    prev = best;
  }
}

TEST_CASE("per-link interference penalty flag") {
  NetworkScenario sc;
  sc.tb_bandwidth_hz = 1.62e6;
  sc.users = {{{200, 0}, 1}};
  sc.stations = {{{0, 0}, true, 0}, {{600, 0}, false, 40}};
  double plain = aggregate_channel_factor(sc.users[0], sc);
  sc.params.per_link_interference_term = true;
  double penalized = aggregate_channel_factor(sc.users[0], sc);
  CHECK(penalized < plain);
}
