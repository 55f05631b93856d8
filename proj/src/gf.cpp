#include "sfncast/gf.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sfncast {
namespace {

// Primitive polynomials over GF(2), bit i = coefficient of x^i.
const uint32_t kBinaryPrimitivePoly[17] = {
    0,      0x3,    0x7,    0xB,    0x13,   0x25,   0x43,    0x89,   0x11D,
    0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003,  0x1100B};

constexpr uint32_t kMaxTableOrder = 1u << 16;

uint64_t powmod(uint64_t base, uint64_t e, uint64_t mod) {
  uint64_t r = 1;
  base %= mod;
  while (e) {
    if (e & 1) r = r * base % mod;
    base = base * base % mod;
    e >>= 1;
  }
  return r;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dense polynomials over GF(p), little-endian coefficients.
using Poly = std::vector<uint32_t>;

Poly poly_trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mod(Poly a, const Poly& f, uint32_t p) {
  const size_t df = f.size() - 1;
  uint32_t lead_inv = static_cast<uint32_t>(powmod(f.back(), p - 2, p));
  while (a.size() > df) {
    uint32_t c = a.back();
    if (c != 0) {
      uint64_t factor = static_cast<uint64_t>(c) * lead_inv % p;
      size_t shift = a.size() - 1 - df;
      for (size_t i = 0; i < f.size(); ++i) {
        uint64_t sub = factor * f[i] % p;
        a[i + shift] = static_cast<uint32_t>((a[i + shift] + p - sub) % p);
      }
    }
    a.pop_back();
  }
  return a;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& f, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = static_cast<uint32_t>(
          (prod[i + j] + static_cast<uint64_t>(a[i]) * b[j]) % p);
    }
  }
  return poly_trim(poly_mod(std::move(prod), f, p));
}

Poly poly_pow_mod(Poly base, uint64_t e, const Poly& f, uint32_t p) {
  Poly r{1};
  base = poly_trim(poly_mod(std::move(base), f, p));
  while (e) {
    if (e & 1) r = poly_mul_mod(r, base, f, p);
    base = poly_mul_mod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, uint32_t p) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = poly_trim(std::move(r));
  }
  return a;
}

Poly poly_sub(Poly a, const Poly& b, uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  return poly_trim(std::move(a));
}

// Rabin's irreducibility test for a monic polynomial of degree m over GF(p).
bool poly_is_irreducible(const Poly& f, uint32_t p, uint32_t m) {
  const Poly x{0, 1};
  // x^(p^m) == x mod f
  Poly h = x;
  for (uint32_t i = 0; i < m; ++i) h = poly_pow_mod(h, p, f, p);
  if (poly_trim(poly_sub(h, x, p)) != Poly{}) return false;
  for (uint64_t r : prime_factors(m)) {
    Poly g = x;
    for (uint32_t i = 0; i < m / r; ++i) g = poly_pow_mod(g, p, f, p);
    Poly d = poly_gcd(poly_sub(g, x, p), f, p);
    if (d.size() != 1) return false;
  }
  return true;
}

Poly decode_element(uint32_t v, uint32_t p, uint32_t m) {
  Poly d(m, 0);
  for (uint32_t i = 0; i < m; ++i) {
    d[i] = v % p;
    v /= p;
  }
  return poly_trim(std::move(d));
}

uint32_t encode_element(const Poly& d, uint32_t p) {
  uint32_t v = 0;
  for (size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

}  // namespace

bool is_prime_power(uint32_t n, uint32_t* prime, uint32_t* exponent) {
  if (n < 2) return false;
  uint32_t p = 0;
  for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = n;  // n itself is prime
  uint32_t m = 0;
  uint64_t v = n;
  while (v % p == 0) {
    v /= p;
    ++m;
  }
  if (v != 1) return false;
  if (prime) *prime = p;
  if (exponent) *exponent = m;
  return true;
}

FieldSpec::FieldSpec(uint32_t order) : order_(order) {
  if (!is_prime_power(order, &prime_, &degree_)) {
    throw std::invalid_argument("field order must be a prime power >= 2 (got " +
                                std::to_string(order) + ")");
  }
}

Field::Field(FieldSpec spec) : spec_(spec) {
  if (spec_.extension_degree() == 1) {
    prime_ = true;
    return;
  }
  if (spec_.order() > kMaxTableOrder) {
    throw std::invalid_argument(
        "extension field order too large for table arithmetic (max 65536)");
  }
  binary_ = spec_.characteristic() == 2;
  if (binary_) {
    build_binary_tables();
  } else {
    build_generic_tables();
  }
}

void Field::build_binary_tables() {
  const uint32_t q = spec_.order();
  const uint32_t poly = kBinaryPrimitivePoly[spec_.extension_degree()];
  exp_.resize(q - 1);
  log_.assign(q, 0);
  uint32_t b = 1;
  for (uint32_t i = 0; i < q - 1; ++i) {
    exp_[i] = b;
    log_[b] = i;
    b <<= 1;
    if (b & q) b ^= poly;  // poly carries the x^m bit, so this reduces
  }
}

void Field::build_generic_tables() {
  const uint32_t p = spec_.characteristic();
  const uint32_t m = spec_.extension_degree();
  const uint32_t q = spec_.order();

  // Lexicographically first monic irreducible polynomial of degree m.
  Poly f;
  for (uint32_t low = 0;; ++low) {
    Poly cand = decode_element(low, p, m);
    cand.resize(m + 1, 0);
    cand[m] = 1;
    if (poly_is_irreducible(cand, p, m)) {
      f = cand;
      break;
    }
    if (low == q - 1) throw std::logic_error("no irreducible polynomial found");
  }

  auto mul_slow = [&](uint32_t a, uint32_t b) {
    return encode_element(
        poly_mul_mod(decode_element(a, p, m), decode_element(b, p, m), f, p), p);
  };
  auto pow_slow = [&](uint32_t a, uint64_t e) {
    uint32_t r = 1;
    while (e) {
      if (e & 1) r = mul_slow(r, a);
      a = mul_slow(a, a);
      e >>= 1;
    }
    return r;
  };

  const auto factors = prime_factors(q - 1);
  uint32_t g = 0;
  for (uint32_t cand = 2; cand < q; ++cand) {
    bool primitive = true;
    for (uint64_t r : factors) {
      if (pow_slow(cand, (q - 1) / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = cand;
      break;
    }
  }
  if (g == 0) throw std::logic_error("no generator found");

  exp_.resize(q - 1);
  log_.assign(q, 0);
  uint32_t e = 1;
  for (uint32_t i = 0; i < q - 1; ++i) {
    exp_[i] = e;
    log_[e] = i;
    e = mul_slow(e, g);
  }
}

void Field::check(uint32_t a) const {
  if (a >= spec_.order()) {
    throw std::invalid_argument("value " + std::to_string(a) +
                                " is not an element of GF(" +
                                std::to_string(spec_.order()) + ")");
  }
}

uint32_t Field::add(uint32_t a, uint32_t b) const {
  check(a);
  check(b);
  if (prime_) return static_cast<uint32_t>((static_cast<uint64_t>(a) + b) % spec_.order());
  if (binary_) return a ^ b;
  const uint32_t p = spec_.characteristic();
  uint32_t out = 0, mult = 1;
  while (a || b) {
    out += (a % p + b % p) % p * mult;
    a /= p;
    b /= p;
    mult *= p;
  }
  return out;
}

uint32_t Field::sub(uint32_t a, uint32_t b) const {
  check(a);
  check(b);
  if (prime_) {
    const uint32_t q = spec_.order();
    return static_cast<uint32_t>((static_cast<uint64_t>(a) + q - b) % q);
  }
  if (binary_) return a ^ b;
  const uint32_t p = spec_.characteristic();
  uint32_t out = 0, mult = 1;
  while (a || b) {
    out += (a % p + p - b % p) % p * mult;
    a /= p;
    b /= p;
    mult *= p;
  }
  return out;
}

uint32_t Field::mul(uint32_t a, uint32_t b) const {
  check(a);
  check(b);
  if (prime_) return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % spec_.order());
  if (a == 0 || b == 0) return 0;
  const uint32_t qm1 = spec_.order() - 1;
  uint32_t s = log_[a] + log_[b];
  if (s >= qm1) s -= qm1;
  return exp_[s];
}

uint32_t Field::inv(uint32_t a) const {
  check(a);
  if (a == 0) throw std::invalid_argument("zero has no multiplicative inverse");
  if (prime_) return static_cast<uint32_t>(powmod(a, spec_.order() - 2, spec_.order()));
  const uint32_t qm1 = spec_.order() - 1;
  return exp_[(qm1 - log_[a]) % qm1];
}

uint32_t Field::div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

}  // namespace sfncast
