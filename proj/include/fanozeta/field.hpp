#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace fanozeta {

/// An element of F_{p^r}. The code is the base-p integer sum_j c_j p^j built
/// from the coefficients c_j of x^j in the residue modulo the field modulus,
/// so every element has exactly one code and codes enumerate the field.
struct FqElem {
  std::uint64_t code = 0;

  friend constexpr auto operator<=>(const FqElem&, const FqElem&) = default;
};

enum class SquareClass { zero, square, nonsquare };

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Fields up to this order get exp/log/Zech tables (covers 11^5 with room).
inline constexpr std::uint64_t kTableThreshold = std::uint64_t{1} << 22;
inline constexpr std::uint64_t kDefaultMaxOrder = std::uint64_t{1} << 62;

/// Builds (or returns the cached) field F_{p^r}. The modulus is the
/// lexicographically smallest monic irreducible of degree r, comparing the
/// coefficient tuple (c_0, c_1, ..., c_{r-1}) with c_0 most significant.
/// Throws InputError for p = 2 or composite p, ResourceError if p^r > max_order.
FieldPtr make_field(std::uint32_t p, std::uint32_t r,
                    std::uint64_t max_order = kDefaultMaxOrder);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

class Field {
 public:
  Field(std::uint32_t p, std::uint32_t r, std::vector<std::uint32_t> modulus);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return r_; }
  std::uint64_t order() const { return order_; }
  /// Monic modulus, r+1 coefficients from x^0 up to x^r.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool has_tables() const { return !exp_.empty(); }

  FqElem zero() const { return {0}; }
  FqElem one() const { return {1}; }
  /// Prime-field constant v mod p.
  FqElem from_int(std::int64_t v) const;
  FqElem from_coeffs(std::span<const std::uint32_t> c) const;
  std::vector<std::uint32_t> coeffs(FqElem x) const;
  bool contains(FqElem x) const { return x.code < order_; }

  FqElem add(FqElem a, FqElem b) const;
  FqElem sub(FqElem a, FqElem b) const;
  FqElem neg(FqElem a) const;
  FqElem mul(FqElem a, FqElem b) const;
  FqElem inv(FqElem a) const;
  FqElem pow(FqElem a, std::uint64_t e) const;
  /// Product via polynomial multiplication and reduction, never via tables.
  FqElem mul_schoolbook(FqElem a, FqElem b) const;

  /// Table lookup when tables exist, Euler's criterion otherwise.
  SquareClass square_class(FqElem x) const;
  SquareClass square_class_euler(FqElem x) const;

  /// Smallest-code primitive element. Requires tables.
  FqElem generator() const;

  // Log domain: a nonzero element g^k is represented by k in [0, Q-1) and zero
  // by the sentinel Q-1. Only available when has_tables().
  std::uint32_t log_zero() const { return group_order_; }
  std::uint32_t group_order() const { return group_order_; }
  std::uint32_t to_log(FqElem x) const { return log_[x.code]; }
  FqElem from_log(std::uint32_t k) const {
    return k == group_order_ ? FqElem{0} : FqElem{exp_[k]};
  }
  std::uint32_t log_mul(std::uint32_t a, std::uint32_t b) const {
    if (a == group_order_ || b == group_order_) return group_order_;
    std::uint32_t s = a + b;
    return s >= group_order_ ? s - group_order_ : s;
  }
  std::uint32_t log_add(std::uint32_t a, std::uint32_t b) const {
    if (a == group_order_) return b;
    if (b == group_order_) return a;
    std::uint32_t d = b >= a ? b - a : b + group_order_ - a;
    std::uint32_t z = zech_[d];
    if (z == group_order_) return group_order_;
    std::uint32_t s = a + z;
    return s >= group_order_ ? s - group_order_ : s;
  }
  std::uint32_t log_neg(std::uint32_t a) const {
    if (a == group_order_) return a;
    std::uint32_t s = a + group_order_ / 2;
    return s >= group_order_ ? s - group_order_ : s;
  }
  /// a^e for an exponent e reduced modulo the group order.
  std::uint32_t log_pow(std::uint32_t a, std::uint64_t e) const {
    if (a == group_order_) return e == 0 ? 0 : group_order_;
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * (e % group_order_)) %
                                      group_order_);
  }
  /// Nonzero squares are exactly the even powers of a generator (Q odd).
  SquareClass log_square_class(std::uint32_t a) const {
    if (a == group_order_) return SquareClass::zero;
    return (a & 1u) == 0 ? SquareClass::square : SquareClass::nonsquare;
  }

 private:
  void build_tables();
  std::vector<std::uint64_t> digits(FqElem x) const;
  FqElem encode(std::span<const std::uint64_t> d) const;

  std::uint32_t p_;
  std::uint32_t r_;
  std::uint64_t order_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint64_t> powers_;  // p^0 .. p^(r-1)

  std::uint32_t group_order_ = 0;
  FqElem generator_{0};
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
};

/// The canonical embedding F_{p^a} -> F_{p^{ab}}: the source generator x is
/// sent to the smallest-code root of the source modulus in the target.
/// Equal-degree targets use the identity.
class Embedding {
 public:
  Embedding(FieldPtr source, FieldPtr target);

  FqElem operator()(FqElem x) const;
  FqElem generator_image() const { return powers_.size() > 1 ? powers_[1] : target_->one(); }
  const FieldPtr& source() const { return source_; }
  const FieldPtr& target() const { return target_; }

 private:
  FieldPtr source_;
  FieldPtr target_;
  std::vector<FqElem> powers_;  // images of x^0 .. x^(a-1)
};

FqElem embed(FqElem x, const FieldPtr& source, const FieldPtr& target);

}  // namespace fanozeta
