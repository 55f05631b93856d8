#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sfncast/evaluation.hpp"

namespace sfncast {

inline constexpr const char* kVersion = "0.1.0";

/// Header: strategy,budget_w,rbp,feasible,epsilon,t_1..t_L,p_1..p_L,iters,error
/// Numeric fields use shortest round-trip decimals; records without an
/// allocation leave epsilon and the per-layer columns empty.
std::string results_csv(const SweepResult& result);

/// Header: distance_m,strategy,psnr_db
std::string psnr_csv(const std::vector<PsnrRow>& rows);

std::string manifest_text(const std::string& version, uint64_t config_hash,
                          uint64_t seed);

}  // namespace sfncast
