#pragma once

#include <optional>
#include <string>
#include <vector>

namespace sfncast {

/// Corrected Shannon rate for a TB stream: zero below the sigma_min SINR
/// threshold, alpha*W*log2(1 + beta*sigma) in between, constant beyond
/// sigma_max.
class RateModel {
 public:
  RateModel(double alpha, double beta, double sigma_min_db, double sigma_max_db,
            double tb_bandwidth_hz);

  double rate_bps(double power_watts, double aggregate_channel_factor) const;

  /// Smallest power with rate >= target, inflated by a 1e-9 relative guard so
  /// the forward evaluation meets the target in floating point. Empty when the
  /// target exceeds the plateau rate.
  std::optional<double> min_power_for_rate(double target_bps,
                                           double aggregate_channel_factor) const;

  double plateau_rate_bps() const { return plateau_bps_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double sigma_min_db() const { return sigma_min_db_; }
  double sigma_max_db() const { return sigma_max_db_; }
  double sigma_min_linear() const { return sigma_min_lin_; }
  double sigma_max_linear() const { return sigma_max_lin_; }
  double bandwidth_hz() const { return bandwidth_hz_; }

 private:
  double alpha_, beta_, sigma_min_db_, sigma_max_db_, bandwidth_hz_;
  double sigma_min_lin_, sigma_max_lin_, plateau_bps_;
};

struct RateModelParams {
  double alpha = 0.17;
  double beta = 0.06;
  double sigma_min_db = 6.33;
  double sigma_max_db = 31.32;
};

struct RateSample {
  double sinr_db = 0;
  double rate_bps = 0;
  int line = 0;  // source line in the sample file, for diagnostics
};

struct LadFit {
  double alpha = 0;
  double beta = 0;
  double residual_sum = 0;
  size_t samples_used = 0;
};

/// For a fixed beta, the constrained-optimal alpha: with the one-sided
/// constraint r(sigma_i) <= r_i it is the min over samples of
/// r_i / (W log2(1 + beta sigma_i)); inverted it is the max.
double lad_alpha_for_beta(const std::vector<RateSample>& samples,
                          double tb_bandwidth_hz, double beta,
                          bool invert_constraint = false);

/// Least-absolute-deviation fit of (alpha, beta) to rate samples, keeping the
/// fitted curve below every sample (or above, when inverted). Only samples
/// with SINR inside [sigma_min_db, sigma_max_db] are used. Beta is found on a
/// 64-point log grid over [1e-4, 10] refined by golden section to 1e-6
/// relative width.
LadFit fit_lad(const std::vector<RateSample>& samples, double tb_bandwidth_hz,
               double sigma_min_db, double sigma_max_db,
               bool invert_constraint = false);

/// Plain-text samples, one "sinr_db,rate_bps" pair per line, '#' comments.
std::vector<RateSample> load_rate_samples(const std::string& path);

std::string model_card_text(const RateModel& model);

}  // namespace sfncast
