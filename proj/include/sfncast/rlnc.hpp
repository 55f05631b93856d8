#pragma once

#include <cstdint>
#include <vector>

#include "sfncast/gf.hpp"

namespace sfncast {

struct DecodeQuery {
  int64_t source_symbols;    // K
  int64_t received_symbols;  // N
  FieldSpec field;
};

/// Probability that K source symbols can be recovered from N random coded
/// symbols over GF(q):  prod_{j=0}^{K-1} (1 - q^-(N-j)).
/// Returns 1 for K = 0 and 0 for N < K. Switches to log-space accumulation
/// for K > 64 to avoid underflow in long products.
double decode_probability(const DecodeQuery& query);
double decode_probability(int64_t source_symbols, int64_t received_symbols,
                          uint32_t field_order);

/// Coded symbols received over `transmissions` TTIs at the given link rate:
/// floor(tti_seconds * rate_bps * transmissions / symbol_size_bits).
int64_t received_symbols(double rate_bps, int64_t transmissions,
                         double symbol_size_bits, double tti_seconds);

struct CodingMatrix {
  CodingMatrix(int rows, int cols, FieldSpec field);

  uint32_t& at(int r, int c) { return entries[static_cast<size_t>(r) * cols + c]; }
  uint32_t at(int r, int c) const { return entries[static_cast<size_t>(r) * cols + c]; }

  int rows;  // K, information elements
  int cols;  // N, coded elements
  FieldSpec field;
  std::vector<uint32_t> entries;  // row-major
};

int matrix_rank(const CodingMatrix& m);
int matrix_rank(const CodingMatrix& m, const Field& field);

/// Fraction of `trials` random K x N matrices over the field with rank K.
/// Deterministic for a fixed seed.
double monte_carlo_full_rank(int source_symbols, int coded_symbols,
                             FieldSpec field, int64_t trials, uint64_t seed);

}  // namespace sfncast
