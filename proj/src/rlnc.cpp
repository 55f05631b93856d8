#include "sfncast/rlnc.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace sfncast {
namespace {

// Unbiased uniform draws over [0, q). Powers of two slice bits off a pooled
// 64-bit word; other orders use rejection sampling.
class UniformFieldSampler {
 public:
  UniformFieldSampler(uint32_t order, uint64_t seed)
      : gen_(seed), q_(order), pow2_((order & (order - 1)) == 0) {
    if (pow2_) {
      bits_ = 0;
      while ((1u << bits_) < order) ++bits_;
      mask_ = order - 1;
    } else {
      limit_ = UINT64_MAX - UINT64_MAX % order;
    }
  }

  uint32_t next() {
    if (pow2_) {
      if (pool_bits_ < bits_) {
        pool_ = gen_();
        pool_bits_ = 64;
      }
      uint32_t v = static_cast<uint32_t>(pool_) & mask_;
      pool_ >>= bits_;
      pool_bits_ -= bits_;
      return v;
    }
    uint64_t v;
    do {
      v = gen_();
    } while (v >= limit_);
    return static_cast<uint32_t>(v % q_);
  }

 private:
  std::mt19937_64 gen_;
  uint32_t q_;
  bool pow2_;
  unsigned bits_ = 0;
  uint32_t mask_ = 0;
  uint64_t limit_ = 0;
  uint64_t pool_ = 0;
  unsigned pool_bits_ = 0;
};

}  // namespace

double decode_probability(int64_t source_symbols, int64_t received_symbols,
                          uint32_t field_order) {
  return decode_probability(
      DecodeQuery{source_symbols, received_symbols, FieldSpec(field_order)});
}

double decode_probability(const DecodeQuery& query) {
  const int64_t k = query.source_symbols;
  const int64_t n = query.received_symbols;
  if (k < 0 || n < 0) throw std::invalid_argument("symbol counts must be non-negative");
  if (k == 0) return 1.0;
  if (n < k) return 0.0;
  const double q = query.field.order();
  if (k <= 64) {
    double p = 1.0;
    for (int64_t j = 0; j < k; ++j) {
      p *= 1.0 - std::pow(q, -static_cast<double>(n - j));
    }
    return p;
  }
  // Kahan-summed log-space product for long blocks.
  double sum = 0.0, comp = 0.0;
  for (int64_t j = 0; j < k; ++j) {
    double term = std::log1p(-std::pow(q, -static_cast<double>(n - j)));
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return std::exp(sum);
}

int64_t received_symbols(double rate_bps, int64_t transmissions,
                         double symbol_size_bits, double tti_seconds) {
  if (symbol_size_bits <= 0) {
    throw std::invalid_argument("symbol_size_bits must be positive");
  }
  if (rate_bps < 0 || transmissions < 0 || tti_seconds <= 0) {
    throw std::invalid_argument(
        "rate, transmission count and TTI duration must be non-negative");
  }
  double v = std::floor(tti_seconds * rate_bps * static_cast<double>(transmissions) /
                        symbol_size_bits);
  if (v >= 9.2e18) throw std::overflow_error("received symbol count overflows");
  return static_cast<int64_t>(v);
}

CodingMatrix::CodingMatrix(int r, int c, FieldSpec f)
    : rows(r), cols(c), field(f) {
  if (r < 0 || c < 0) throw std::invalid_argument("matrix dimensions must be non-negative");
  entries.assign(static_cast<size_t>(r) * c, 0);
}

int matrix_rank(const CodingMatrix& m) {
  Field f(m.field);
  for (uint32_t v : m.entries) {
    if (v >= m.field.order()) {
      throw std::invalid_argument("matrix entry is not a field element");
    }
  }
  return matrix_rank(m, f);
}

int matrix_rank(const CodingMatrix& m, const Field& field) {
  std::vector<uint32_t> a = m.entries;
  const int rows = m.rows, cols = m.cols;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (a[static_cast<size_t>(r) * cols + col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int c = 0; c < cols; ++c) {
        std::swap(a[static_cast<size_t>(pivot) * cols + c],
                  a[static_cast<size_t>(rank) * cols + c]);
      }
    }
    const uint32_t pinv = field.inv(a[static_cast<size_t>(rank) * cols + col]);
    for (int r = rank + 1; r < rows; ++r) {
      uint32_t factor = field.mul(a[static_cast<size_t>(r) * cols + col], pinv);
      if (factor == 0) continue;
      for (int c = col; c < cols; ++c) {
        a[static_cast<size_t>(r) * cols + c] =
            field.sub(a[static_cast<size_t>(r) * cols + c],
                      field.mul(factor, a[static_cast<size_t>(rank) * cols + c]));
      }
    }
    ++rank;
  }
  return rank;
}

double monte_carlo_full_rank(int source_symbols, int coded_symbols,
                             FieldSpec field, int64_t trials, uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (source_symbols < 0 || coded_symbols < 0) {
    throw std::invalid_argument("symbol counts must be non-negative");
  }
  const int k = source_symbols, n = coded_symbols;
  if (k == 0) return 1.0;
  if (n < k) return 0.0;

  Field f(field);
  UniformFieldSampler sampler(field.order(), seed);

  // Incremental rank: keep a row-reduced basis indexed by leading column.
  std::vector<std::vector<uint32_t>> basis(k);
  std::vector<bool> used(k, false);
  std::vector<uint32_t> row(k);
  int64_t full = 0;

  for (int64_t t = 0; t < trials; ++t) {
    std::fill(used.begin(), used.end(), false);
    int rank = 0;
    for (int j = 0; j < n && rank < k; ++j) {
      for (int i = 0; i < k; ++i) row[i] = sampler.next();
      for (int col = 0; col < k; ++col) {
        if (row[col] == 0) continue;
        if (used[col]) {
          const uint32_t factor = row[col];
          const auto& b = basis[col];
          for (int i = col; i < k; ++i) row[i] = f.sub(row[i], f.mul(factor, b[i]));
          continue;
        }
        const uint32_t pinv = f.inv(row[col]);
        auto& b = basis[col];
        b.assign(k, 0);
        for (int i = col; i < k; ++i) b[i] = f.mul(row[i], pinv);
        used[col] = true;
        ++rank;
        break;
      }
    }
    if (rank == k) ++full;
  }
  return static_cast<double>(full) / static_cast<double>(trials);
}

}  // namespace sfncast
