#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fanozeta/field.hpp"

namespace fanozeta {

inline constexpr unsigned kMaxVars = 5;
using Exponents = std::array<std::uint8_t, kMaxVars>;

/// All exponent vectors of total degree d in n variables, in lexicographic
/// order with x1 most significant (x1^d first). Cached per (n, d).
const std::vector<Exponents>& monomials(unsigned nvars, unsigned degree);
std::size_t monomial_index(unsigned nvars, unsigned degree, const Exponents& e);

/// Homogeneous polynomial over a finite field, dense in the monomial basis.
class Form {
 public:
  Form() = default;
  Form(FieldPtr field, unsigned nvars, unsigned degree);

  static Form variable(FieldPtr field, unsigned nvars, unsigned index);
  static Form constant(FieldPtr field, unsigned nvars, FqElem c);
  static Form linear(FieldPtr field, std::span<const FqElem> coeffs);

  const FieldPtr& field() const { return field_; }
  unsigned nvars() const { return nvars_; }
  unsigned degree() const { return degree_; }
  std::size_t size() const { return coeffs_.size(); }
  const Exponents& monomial(std::size_t i) const { return monomials(nvars_, degree_)[i]; }
  FqElem coeff(std::size_t i) const { return coeffs_[i]; }
  FqElem coeff(const Exponents& e) const;
  void set(const Exponents& e, FqElem c);
  void add_to(const Exponents& e, FqElem c);
  bool is_zero() const;

  Form operator+(const Form& o) const;
  Form operator-(const Form& o) const;
  Form operator*(const Form& o) const;
  Form scaled(FqElem c) const;

  FqElem eval(std::span<const FqElem> point) const;
  /// Composition with linear forms: result(y) = this(images[0](y), ...).
  Form substitute(std::span<const Form> images) const;
  Form partial(unsigned var) const;
  /// Coefficientwise image in a larger field.
  Form embedded(const Embedding& e) const;

  /// Human-readable form such as "x1^2*x4 + 2*x2*x4*x5".
  std::string to_string() const;

  friend bool operator==(const Form& a, const Form& b) {
    return a.nvars_ == b.nvars_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_compatible(const Form& o) const;

  FieldPtr field_;
  unsigned nvars_ = 0;
  unsigned degree_ = 0;
  std::vector<FqElem> coeffs_;
};

}  // namespace fanozeta
