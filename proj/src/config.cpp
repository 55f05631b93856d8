#include "sfncast/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>

#include "sfncast/text.hpp"

namespace sfncast {
namespace {

double parse_double(const std::string& s) {
  size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("trailing characters");
  return v;
}

int parse_int(const std::string& s) {
  size_t pos = 0;
  long v = std::stol(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("trailing characters");
  return static_cast<int>(v);
}

uint64_t parse_u64(const std::string& s) {
  size_t pos = 0;
  unsigned long long v = std::stoull(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("trailing characters");
  return v;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& s, Parse parse) {
  std::vector<T> out;
  for (const auto& piece : split(s, ',')) {
    std::string t = trim(piece);
    if (t.empty()) throw std::invalid_argument("empty list entry");
    out.push_back(parse(t));
  }
  return out;
}

using Setter = std::function<void(ScenarioConfig&, const std::string&)>;

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> s = {
      {"deployment",
       {
           {"isd_m", [](ScenarioConfig& c, const std::string& v) { c.isd_m = parse_double(v); }},
           {"rings", [](ScenarioConfig& c, const std::string& v) { c.rings = parse_int(v); }},
           {"sfn_site_indices",
            [](ScenarioConfig& c, const std::string& v) {
              c.sfn_site_indices = parse_list<int>(v, parse_int);
            }},
           {"interferer_power_w",
            [](ScenarioConfig& c, const std::string& v) { c.interferer_power_w = parse_double(v); }},
       }},
      {"users",
       {
           {"count", [](ScenarioConfig& c, const std::string& v) { c.user_count = parse_int(v); }},
           {"spacing_m",
            [](ScenarioConfig& c, const std::string& v) { c.user_spacing_m = parse_double(v); }},
           {"start_m",
            [](ScenarioConfig& c, const std::string& v) { c.user_start_m = parse_double(v); }},
           {"extra_eval_positions_m",
            [](ScenarioConfig& c, const std::string& v) {
              c.extra_eval_positions_m = parse_list<double>(v, parse_double);
            }},
       }},
      {"propagation",
       {
           {"tx_antenna_gain_db",
            [](ScenarioConfig& c, const std::string& v) { c.tx_antenna_gain_db = parse_double(v); }},
           {"rx_antenna_gain_db",
            [](ScenarioConfig& c, const std::string& v) { c.rx_antenna_gain_db = parse_double(v); }},
           {"penetration_loss_db",
            [](ScenarioConfig& c, const std::string& v) { c.penetration_loss_db = parse_double(v); }},
           {"noise_density_dbm_per_hz",
            [](ScenarioConfig& c, const std::string& v) {
              c.noise_density_dbm_per_hz = parse_double(v);
            }},
           {"pathloss_intercept_db",
            [](ScenarioConfig& c, const std::string& v) { c.pathloss_intercept_db = parse_double(v); }},
           {"pathloss_slope_db_per_decade",
            [](ScenarioConfig& c, const std::string& v) {
              c.pathloss_slope_db_per_decade = parse_double(v);
            }},
           {"min_coupling_distance_m",
            [](ScenarioConfig& c, const std::string& v) {
              c.min_coupling_distance_m = parse_double(v);
            }},
       }},
      {"rate_model",
       {
           {"alpha", [](ScenarioConfig& c, const std::string& v) { c.alpha = parse_double(v); }},
           {"beta", [](ScenarioConfig& c, const std::string& v) { c.beta = parse_double(v); }},
           {"sigma_min_db",
            [](ScenarioConfig& c, const std::string& v) { c.sigma_min_db = parse_double(v); }},
           {"sigma_max_db",
            [](ScenarioConfig& c, const std::string& v) { c.sigma_max_db = parse_double(v); }},
           {"samples_path",
            [](ScenarioConfig& c, const std::string& v) { c.samples_path = v; }},
           {"samples_w_hz",
            [](ScenarioConfig& c, const std::string& v) { c.samples_w_hz = parse_double(v); }},
       }},
      {"video",
       {
           {"name", [](ScenarioConfig& c, const std::string& v) { c.video_name = v; }},
           {"bitrate_bps",
            [](ScenarioConfig& c, const std::string& v) {
              c.bitrate_bps = parse_list<double>(v, parse_double);
            }},
           {"k_symbols",
            [](ScenarioConfig& c, const std::string& v) {
              c.k_symbols = parse_list<int>(v, parse_int);
            }},
           {"psnr_db",
            [](ScenarioConfig& c, const std::string& v) {
              c.psnr_db = parse_list<double>(v, parse_double);
            }},
           {"theta",
            [](ScenarioConfig& c, const std::string& v) {
              c.theta = parse_list<double>(v, parse_double);
            }},
           {"symbol_size_bits",
            [](ScenarioConfig& c, const std::string& v) { c.symbol_size_bits = parse_double(v); }},
           {"q",
            [](ScenarioConfig& c, const std::string& v) {
              c.q = static_cast<uint32_t>(parse_u64(v));
            }},
           {"phi", [](ScenarioConfig& c, const std::string& v) { c.phi = parse_double(v); }},
           {"d_gop_ttis",
            [](ScenarioConfig& c, const std::string& v) { c.d_gop_ttis = parse_int(v); }},
           {"t_mbms", [](ScenarioConfig& c, const std::string& v) { c.t_mbms = parse_double(v); }},
           {"tti_s", [](ScenarioConfig& c, const std::string& v) { c.tti_s = parse_double(v); }},
       }},
      {"run",
       {
           {"strategies",
            [](ScenarioConfig& c, const std::string& v) {
              c.strategies = parse_list<std::string>(v, [](const std::string& t) { return t; });
            }},
           {"budgets_w",
            [](ScenarioConfig& c, const std::string& v) {
              c.budgets_w = parse_list<double>(v, parse_double);
            }},
           {"rbp_counts",
            [](ScenarioConfig& c, const std::string& v) {
              c.rbp_counts = parse_list<int>(v, parse_int);
            }},
           {"seed", [](ScenarioConfig& c, const std::string& v) { c.seed = parse_u64(v); }},
           {"psnr_budget_w",
            [](ScenarioConfig& c, const std::string& v) { c.psnr_budget_w = parse_double(v); }},
           {"psnr_rbp",
            [](ScenarioConfig& c, const std::string& v) { c.psnr_rbp = parse_int(v); }},
       }},
  };
  return s;
}

[[noreturn]] void fail_at(const std::string& src, int line, const std::string& msg) {
  throw ConfigError(src + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

ScenarioConfig parse_config(std::istream& in, const std::string& src) {
  ScenarioConfig cfg;
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') fail_at(src, lineno, "unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      if (!schema().count(section)) fail_at(src, lineno, "unknown section '" + section + "'");
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos) fail_at(src, lineno, "expected 'key = value'");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (section.empty()) fail_at(src, lineno, "key '" + key + "' outside any section");
    const auto& keys = schema().at(section);
    auto it = keys.find(key);
    if (it == keys.end()) {
      fail_at(src, lineno, "unknown key '" + section + "." + key + "'");
    }
    try {
      it->second(cfg, value);
    } catch (const std::exception& e) {
      fail_at(src, lineno, "bad value for '" + section + "." + key + "': " + e.what());
    }
  }
  validate_config(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in, path);
}

void validate_config(const ScenarioConfig& cfg) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (!(cfg.isd_m > 0)) fail("isd_m must be positive");
  if (cfg.rings < 0) fail("rings must be non-negative");
  if (cfg.interferer_power_w < 0) fail("interferer_power_w must be non-negative");
  if (cfg.user_count < 1) fail("user count must be >= 1");
  if (!(cfg.user_spacing_m > 0)) fail("user spacing must be positive");
  if (cfg.user_start_m < 0) fail("user start distance must be non-negative");
  for (double d : cfg.extra_eval_positions_m) {
    if (!(d > 0)) fail("extra evaluation positions must be positive distances");
  }
  if (cfg.pathloss_slope_db_per_decade < 0 || cfg.penetration_loss_db < 0 ||
      cfg.min_coupling_distance_m < 0) {
    fail("propagation losses and slopes must be non-negative");
  }
  if (!std::isfinite(cfg.noise_density_dbm_per_hz)) fail("noise density must be finite");
  if (cfg.samples_path.empty()) {
    if (!(cfg.alpha > 0) || !(cfg.beta > 0)) fail("alpha and beta must be positive");
  }
  if (!(cfg.sigma_min_db < cfg.sigma_max_db)) fail("sigma_min_db must be below sigma_max_db");
  if (!(cfg.samples_w_hz > 0)) fail("samples_w_hz must be positive");

  const size_t layers = cfg.psnr_db.size();
  if (layers == 0) fail("video needs at least one layer");
  if (cfg.theta.size() != layers) fail("theta list length must match psnr_db");
  if (!cfg.k_symbols.empty() && cfg.k_symbols.size() != layers) {
    fail("k_symbols list length must match psnr_db");
  }
  if (cfg.k_symbols.empty() && cfg.bitrate_bps.size() != layers) {
    fail("bitrate_bps list length must match psnr_db");
  }
  for (double th : cfg.theta) {
    if (!(th > 0) || th > 1) fail("coverage_target out of (0,1]");
  }
  for (int k : cfg.k_symbols) {
    if (k < 1) fail("k_symbols entries must be >= 1");
  }
  if (cfg.k_symbols.empty()) {
    for (double r : cfg.bitrate_bps) {
      if (!(r > 0)) fail("bitrate_bps entries must be positive");
    }
  }
  if (!(cfg.symbol_size_bits > 0)) fail("symbol_size_bits must be positive");
  if (!is_prime_power(cfg.q)) fail("q must be a prime power >= 2");
  if (!(cfg.phi > 0) || cfg.phi > 1) fail("target probability out of (0,1]");
  if (cfg.d_gop_ttis < 1) fail("d_gop_ttis must be >= 1");
  if (!(cfg.t_mbms > 0) || cfg.t_mbms > 1) fail("t_mbms out of (0,1]");
  if (!(cfg.tti_s > 0)) fail("tti_s must be positive");

  if (cfg.strategies.empty()) fail("strategies list must be non-empty");
  for (const auto& s : cfg.strategies) {
    if (!strategy_from_string(s)) fail("unknown strategy '" + s + "'");
  }
  if (cfg.budgets_w.empty()) fail("budgets_w list must be non-empty");
  for (double b : cfg.budgets_w) {
    if (!(b > 0)) fail("budgets must be positive");
  }
  if (cfg.rbp_counts.empty()) fail("rbp_counts list must be non-empty");
  for (int r : cfg.rbp_counts) {
    if (r < 1) fail("rbp_counts entries must be >= 1");
  }
  if (!(cfg.psnr_budget_w > 0)) fail("psnr_budget_w must be positive");
  if (cfg.psnr_rbp < 1) fail("psnr_rbp must be >= 1");

  // Catch invalid source blocks here rather than deep in the solvers.
  try {
    stream_from_config(cfg);
  } catch (const std::exception& e) {
    fail(e.what());
  }
}

NetworkScenario scenario_from_config(const ScenarioConfig& cfg, double tb_bandwidth_hz) {
  const Vec2 axis{1, 0};
  auto sites = build_hex_layout(cfg.isd_m, cfg.rings);
  std::vector<int> sfn = cfg.sfn_site_indices;
  if (sfn.empty()) sfn = default_sfn_sites(sites, cfg.isd_m, axis);
  std::set<int> sfn_set;
  for (int idx : sfn) {
    if (idx < 0 || idx >= static_cast<int>(sites.size())) {
      throw ConfigError("sfn_site_indices entry " + std::to_string(idx) +
                        " out of range for " + std::to_string(sites.size()) + " sites");
    }
    sfn_set.insert(idx);
  }
  NetworkScenario sc;
  sc.tb_bandwidth_hz = tb_bandwidth_hz;
  sc.stations.reserve(sites.size());
  for (size_t i = 0; i < sites.size(); ++i) {
    BaseStation b;
    b.position = sites[i];
    b.in_sfn = sfn_set.count(static_cast<int>(i)) > 0;
    b.interferer_tx_power_w = b.in_sfn ? 0 : cfg.interferer_power_w;
    sc.stations.push_back(b);
  }
  sc.users = place_users_on_axis(cfg.user_count, cfg.user_spacing_m, cfg.user_start_m, axis);
  sc.params.tx_antenna_gain_db = cfg.tx_antenna_gain_db;
  sc.params.rx_antenna_gain_db = cfg.rx_antenna_gain_db;
  sc.params.penetration_loss_db = cfg.penetration_loss_db;
  sc.params.noise_density_dbm_per_hz = cfg.noise_density_dbm_per_hz;
  sc.params.pathloss_intercept_db = cfg.pathloss_intercept_db;
  sc.params.pathloss_slope_db_per_decade = cfg.pathloss_slope_db_per_decade;
  sc.params.min_coupling_distance_m = cfg.min_coupling_distance_m;
  sc.params.per_link_interference_term = cfg.per_link_interference_term;
  validate(sc);
  return sc;
}

VideoStream stream_from_config(const ScenarioConfig& cfg) {
  VideoStream stream;
  stream.gop_budget_ttis = cfg.d_gop_ttis;
  stream.field = FieldSpec(cfg.q);
  stream.target_recovery_prob = cfg.phi;
  stream.tti_seconds = cfg.tti_s;
  const size_t layers = cfg.psnr_db.size();
  for (size_t l = 0; l < layers; ++l) {
    VideoLayer layer;
    layer.symbol_size_bits = cfg.symbol_size_bits;
    layer.psnr_db = cfg.psnr_db[l];
    layer.coverage_target = cfg.theta[l];
    if (!cfg.k_symbols.empty()) {
      layer.k_symbols = cfg.k_symbols[l];
      if (l < cfg.bitrate_bps.size()) layer.bitrate_bps = cfg.bitrate_bps[l];
    } else {
      layer.bitrate_bps = cfg.bitrate_bps[l];
      layer.k_symbols = derive_k_symbols(layer.bitrate_bps, cfg.d_gop_ttis, cfg.tti_s,
                                         cfg.t_mbms, cfg.symbol_size_bits);
    }
    stream.layers.push_back(layer);
  }
  validate(stream);
  return stream;
}

RateModelParams rate_params_from_config(const ScenarioConfig& cfg) {
  RateModelParams p;
  p.sigma_min_db = cfg.sigma_min_db;
  p.sigma_max_db = cfg.sigma_max_db;
  if (cfg.samples_path.empty()) {
    p.alpha = cfg.alpha;
    p.beta = cfg.beta;
  } else {
    auto samples = load_rate_samples(cfg.samples_path);
    LadFit fit = fit_lad(samples, cfg.samples_w_hz, cfg.sigma_min_db, cfg.sigma_max_db,
                         cfg.invert_fit_constraint);
    p.alpha = fit.alpha;
    p.beta = fit.beta;
  }
  return p;
}

std::vector<UserTerminal> extra_eval_users_from_config(const ScenarioConfig& cfg) {
  std::vector<UserTerminal> out;
  int id = cfg.user_count + 1;
  for (double d : cfg.extra_eval_positions_m) {
    out.push_back({{d, 0}, id++});
  }
  return out;
}

std::vector<Strategy> strategies_from_config(const ScenarioConfig& cfg) {
  std::vector<Strategy> out;
  for (const auto& name : cfg.strategies) {
    out.push_back(*strategy_from_string(name));
  }
  return out;
}

}  // namespace sfncast
