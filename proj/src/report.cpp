#include "sfncast/report.hpp"

#include <cstdio>

#include "sfncast/text.hpp"

namespace sfncast {

std::string results_csv(const SweepResult& result) {
  std::string out = "strategy,budget_w,rbp,feasible,epsilon";
  for (size_t l = 1; l <= result.layer_count; ++l) out += ",t_" + std::to_string(l);
  for (size_t l = 1; l <= result.layer_count; ++l) out += ",p_" + std::to_string(l);
  out += ",iters,error\n";
  for (const auto& r : result.records) {
    out += to_string(r.strategy);
    out += ',';
    out += format_double(r.budget_w);
    out += ',';
    out += std::to_string(r.rbp);
    out += ',';
    out += r.feasible ? '1' : '0';
    out += ',';
    if (r.has_allocation()) out += format_double(r.epsilon);
    for (size_t l = 0; l < result.layer_count; ++l) {
      out += ',';
      if (l < r.transmissions.size()) out += std::to_string(r.transmissions[l]);
    }
    for (size_t l = 0; l < result.layer_count; ++l) {
      out += ',';
      if (l < r.powers.size()) out += format_double(r.powers[l]);
    }
    out += ',';
    out += std::to_string(r.iterations);
    out += ',';
    out += r.error;
    out += '\n';
  }
  return out;
}

std::string psnr_csv(const std::vector<PsnrRow>& rows) {
  std::string out = "distance_m,strategy,psnr_db\n";
  for (const auto& r : rows) {
    out += format_double(r.distance_m);
    out += ',';
    out += to_string(r.strategy);
    out += ',';
    out += format_double(r.psnr_db);
    out += '\n';
  }
  return out;
}

std::string manifest_text(const std::string& version, uint64_t config_hash,
                          uint64_t seed) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash));
  std::string out;
  out += "version=" + version + "\n";
  out += "config_hash=" + std::string(hash) + "\n";
  out += "seed=" + std::to_string(seed) + "\n";
  return out;
}

}  // namespace sfncast
