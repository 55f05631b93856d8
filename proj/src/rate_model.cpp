#include "sfncast/rate_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "sfncast/text.hpp"

namespace sfncast {
namespace {

// Multiplicative guard on inverted powers so forward re-evaluation cannot
// land one floating-point step short of the requested rate.
constexpr double kPowerGuard = 1e-9;

double objective_at(const std::vector<RateSample>& samples, double w, double beta,
                    bool invert) {
  const double a = lad_alpha_for_beta(samples, w, beta, invert);
  double sum = 0;
  for (const auto& s : samples) {
    double fit = a * w * std::log2(1.0 + beta * std::pow(10.0, s.sinr_db / 10.0));
    sum += std::abs(s.rate_bps - fit);
  }
  return sum;
}

}  // namespace

RateModel::RateModel(double alpha, double beta, double sigma_min_db,
                     double sigma_max_db, double tb_bandwidth_hz)
    : alpha_(alpha),
      beta_(beta),
      sigma_min_db_(sigma_min_db),
      sigma_max_db_(sigma_max_db),
      bandwidth_hz_(tb_bandwidth_hz) {
  if (!(alpha > 0) || !(beta > 0)) throw std::invalid_argument("alpha and beta must be positive");
  if (!(sigma_min_db < sigma_max_db)) throw std::invalid_argument("sigma_min must be below sigma_max");
  if (!(tb_bandwidth_hz > 0)) throw std::invalid_argument("TB bandwidth must be positive");
  sigma_min_lin_ = std::pow(10.0, sigma_min_db / 10.0);
  sigma_max_lin_ = std::pow(10.0, sigma_max_db / 10.0);
  plateau_bps_ = alpha_ * bandwidth_hz_ * std::log2(1.0 + beta_ * sigma_max_lin_);
}

double RateModel::rate_bps(double power_watts, double h) const {
  if (power_watts < 0) throw std::invalid_argument("power must be non-negative");
  if (!(h > 0)) throw std::invalid_argument("aggregate channel factor must be positive");
  const double sigma = h * power_watts;
  if (sigma < sigma_min_lin_) return 0.0;
  if (sigma > sigma_max_lin_) return plateau_bps_;
  return alpha_ * bandwidth_hz_ * std::log2(1.0 + beta_ * sigma);
}

std::optional<double> RateModel::min_power_for_rate(double target_bps, double h) const {
  if (!(target_bps > 0)) throw std::invalid_argument("target rate must be positive");
  if (!(h > 0)) throw std::invalid_argument("aggregate channel factor must be positive");
  if (target_bps > plateau_bps_) return std::nullopt;
  const double sigma_needed =
      (std::exp2(target_bps / (alpha_ * bandwidth_hz_)) - 1.0) / beta_;
  const double sigma = std::max(sigma_needed, sigma_min_lin_);
  return sigma / h * (1.0 + kPowerGuard);
}

double lad_alpha_for_beta(const std::vector<RateSample>& samples, double w,
                          double beta, bool invert) {
  if (samples.empty()) throw std::invalid_argument("no samples");
  double best = invert ? 0.0 : std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    double den = w * std::log2(1.0 + beta * std::pow(10.0, s.sinr_db / 10.0));
    double a = s.rate_bps / den;
    best = invert ? std::max(best, a) : std::min(best, a);
  }
  return best;
}

LadFit fit_lad(const std::vector<RateSample>& samples, double tb_bandwidth_hz,
               double sigma_min_db, double sigma_max_db, bool invert_constraint) {
  if (samples.size() < 2) throw std::invalid_argument("need at least 2 samples");
  if (!(tb_bandwidth_hz > 0)) throw std::invalid_argument("TB bandwidth must be positive");

  std::vector<RateSample> usable;
  for (const auto& s : samples) {
    if (s.sinr_db >= sigma_min_db && s.sinr_db <= sigma_max_db) usable.push_back(s);
  }
  if (usable.size() < 2) {
    throw std::runtime_error("fewer than 2 samples inside the SINR window [" +
                             format_double(sigma_min_db) + ", " +
                             format_double(sigma_max_db) + "] dB");
  }
  if (!invert_constraint) {
    for (const auto& s : usable) {
      if (s.rate_bps <= 0) {
        throw std::runtime_error(
            "sample at line " + std::to_string(s.line) +
            " has zero rate inside the SINR window; the one-sided constraint "
            "would force alpha to 0");
      }
    }
  }

  const double w = tb_bandwidth_hz;
  constexpr int kGridPoints = 64;
  constexpr double kBetaLo = 1e-4, kBetaHi = 10.0;
  double best_beta = kBetaLo, best_obj = std::numeric_limits<double>::infinity();
  std::vector<double> grid(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) {
    grid[i] = kBetaLo * std::pow(kBetaHi / kBetaLo,
                                 static_cast<double>(i) / (kGridPoints - 1));
    double obj = objective_at(usable, w, grid[i], invert_constraint);
    if (obj < best_obj) {
      best_obj = obj;
      best_beta = grid[i];
    }
  }
  int best_i = 0;
  for (int i = 0; i < kGridPoints; ++i) {
    if (grid[i] == best_beta) best_i = i;
  }
  double lo = grid[std::max(0, best_i - 1)];
  double hi = grid[std::min(kGridPoints - 1, best_i + 1)];

  // Golden-section refinement on the bracketed minimum.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  double fc = objective_at(usable, w, c, invert_constraint);
  double fd = objective_at(usable, w, d, invert_constraint);
  while ((hi - lo) > 1e-6 * lo) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = objective_at(usable, w, c, invert_constraint);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = objective_at(usable, w, d, invert_constraint);
    }
  }
  double beta = (fc < fd) ? c : d;
  double refined_obj = std::min(fc, fd);
  if (best_obj < refined_obj) {
    beta = best_beta;  // keep the grid point if refinement did not improve it
  }

  LadFit fit;
  fit.beta = beta;
  fit.alpha = lad_alpha_for_beta(usable, w, beta, invert_constraint);
  fit.residual_sum = objective_at(usable, w, beta, invert_constraint);
  fit.samples_used = usable.size();
  if (!(fit.alpha > 0)) throw std::runtime_error("fit produced a non-positive alpha");
  return fit;
}

std::vector<RateSample> load_rate_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sample file: " + path);
  std::vector<RateSample> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto parts = split(t, ',');
    if (parts.size() != 2) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 'sinr_db,rate_bps'");
    }
    RateSample s;
    try {
      s.sinr_db = std::stod(trim(parts[0]));
      s.rate_bps = std::stod(trim(parts[1]));
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": malformed number");
    }
    if (s.rate_bps < 0) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": rate must be non-negative");
    }
    s.line = lineno;
    out.push_back(s);
  }
  return out;
}

std::string model_card_text(const RateModel& model) {
  std::string out;
  out += "alpha=" + format_double(model.alpha()) + "\n";
  out += "beta=" + format_double(model.beta()) + "\n";
  out += "sigma_min_db=" + format_double(model.sigma_min_db()) + "\n";
  out += "sigma_max_db=" + format_double(model.sigma_max_db()) + "\n";
  out += "w_hz=" + format_double(model.bandwidth_hz()) + "\n";
  return out;
}

}  // namespace sfncast
