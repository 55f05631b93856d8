#pragma once

#include <cstdint>
#include <vector>

namespace sfncast {

bool is_prime_power(uint32_t n, uint32_t* prime = nullptr, uint32_t* exponent = nullptr);

/// A validated prime-power field order q = p^m.
class FieldSpec {
 public:
  explicit FieldSpec(uint32_t order);
  uint32_t order() const { return order_; }
  uint32_t characteristic() const { return prime_; }
  uint32_t extension_degree() const { return degree_; }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  uint32_t order_;
  uint32_t prime_;
  uint32_t degree_;
};

/// GF(q) arithmetic. Prime fields use modular arithmetic; extension fields
/// use exp/log tables built over a fixed irreducible polynomial
/// (for GF(2^m) a primitive polynomial from a published table; m = 8 is
/// x^8 + x^4 + x^3 + x^2 + 1). Other extension fields take the
/// lexicographically first monic irreducible polynomial, so results are
/// reproducible across builds.
class Field {
 public:
  explicit Field(FieldSpec spec);
  explicit Field(uint32_t order) : Field(FieldSpec(order)) {}

  uint32_t order() const { return spec_.order(); }
  const FieldSpec& spec() const { return spec_; }

  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t sub(uint32_t a, uint32_t b) const;
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const;
  uint32_t div(uint32_t a, uint32_t b) const;

 private:
  void build_binary_tables();
  void build_generic_tables();
  void check(uint32_t a) const;

  FieldSpec spec_;
  bool prime_ = false;
  bool binary_ = false;
  std::vector<uint32_t> exp_;
  std::vector<uint32_t> log_;
};

}  // namespace sfncast
