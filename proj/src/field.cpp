#include "fanozeta/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "fanozeta/errors.hpp"

namespace fanozeta {

namespace {

using Poly = std::vector<std::uint64_t>;  // low-to-high coefficients mod p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  // p prime, a != 0
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  return poly_mod(std::move(c), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin's test: f monic of degree r is irreducible iff x^(p^r) = x mod f and
// gcd(x^(p^(r/d)) - x, f) = 1 for every prime d dividing r.
bool is_irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t r = f.size() - 1;
  if (r == 1) return true;
  auto frobenius_iterate = [&](std::size_t k) {
    Poly x{0, 1};
    for (std::size_t i = 0; i < k; ++i) x = poly_powmod(x, p, f, p);
    return x;
  };
  for (std::uint64_t d : prime_factors(r)) {
    Poly h = frobenius_iterate(r / d);
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    Poly g = poly_gcd(h, f, p);
    if (g.size() != 1) return false;
  }
  Poly h = frobenius_iterate(r);
  return h == Poly{0, 1};
}

std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, std::uint32_t r) {
  // Counter over (c_0, ..., c_{r-1}) with c_0 the most significant digit.
  std::vector<std::uint32_t> c(r, 0);
  while (true) {
    Poly f(c.begin(), c.end());
    f.push_back(1);
    if (is_irreducible(f, p)) {
      std::vector<std::uint32_t> out(c);
      out.push_back(1);
      return out;
    }
    std::size_t i = r;
    while (i > 0) {
      --i;
      if (++c[i] < p) break;
      c[i] = 0;
      if (i == 0) throw InvariantError("no irreducible polynomial found");
    }
  }
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

FieldPtr make_field(std::uint32_t p, std::uint32_t r, std::uint64_t max_order) {
  if (p == 2 || !is_prime(p)) {
    throw InputError("odd characteristic required: p = " + std::to_string(p) +
                     " is not an odd prime");
  }
  if (p >= (1u << 31)) throw InputError("characteristic too large");
  if (r < 1) throw InputError("extension degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < r; ++i) {
    if (q > max_order / p) {
      throw ResourceError("field of order " + std::to_string(p) + "^" + std::to_string(r) +
                          " exceeds the configured size bound");
    }
    q *= p;
  }

  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find({p, r});
  if (it != cache.end()) return it->second;
  auto field = std::make_shared<const Field>(p, r, smallest_irreducible(p, r));
  cache.emplace(std::make_pair(p, r), field);
  return field;
}

Field::Field(std::uint32_t p, std::uint32_t r, std::vector<std::uint32_t> modulus)
    : p_(p), r_(r), modulus_(std::move(modulus)) {
  order_ = 1;
  for (std::uint32_t i = 0; i < r_; ++i) {
    powers_.push_back(order_);
    order_ *= p_;
  }
  if (order_ <= kTableThreshold) build_tables();
}

std::vector<std::uint64_t> Field::digits(FqElem x) const {
  std::vector<std::uint64_t> d(r_);
  for (std::uint32_t i = 0; i < r_; ++i) {
    d[i] = x.code % p_;
    x.code /= p_;
  }
  return d;
}

FqElem Field::encode(std::span<const std::uint64_t> d) const {
  std::uint64_t code = 0;
  for (std::size_t i = d.size(); i-- > 0;) code = code * p_ + d[i];
  return {code};
}

FqElem Field::from_int(std::int64_t v) const {
  std::int64_t m = v % static_cast<std::int64_t>(p_);
  if (m < 0) m += p_;
  return {static_cast<std::uint64_t>(m)};
}

FqElem Field::from_coeffs(std::span<const std::uint32_t> c) const {
  Poly a(c.begin(), c.end());
  for (auto& v : a) v %= p_;
  Poly m(modulus_.begin(), modulus_.end());
  a = poly_mod(std::move(a), m, p_);
  a.resize(r_, 0);
  return encode(a);
}

std::vector<std::uint32_t> Field::coeffs(FqElem x) const {
  auto d = digits(x);
  return {d.begin(), d.end()};
}

FqElem Field::add(FqElem a, FqElem b) const {
  if (r_ == 1) {
    std::uint64_t s = a.code + b.code;
    return {s >= p_ ? s - p_ : s};
  }
  std::uint64_t out = 0;
  for (std::uint32_t i = 0; i < r_; ++i) {
    std::uint64_t s = a.code % p_ + b.code % p_;
    if (s >= p_) s -= p_;
    out += s * powers_[i];
    a.code /= p_;
    b.code /= p_;
  }
  return {out};
}

FqElem Field::neg(FqElem a) const {
  std::uint64_t out = 0;
  for (std::uint32_t i = 0; i < r_; ++i) {
    std::uint64_t d = a.code % p_;
    out += (d == 0 ? 0 : p_ - d) * powers_[i];
    a.code /= p_;
  }
  return {out};
}

FqElem Field::sub(FqElem a, FqElem b) const { return add(a, neg(b)); }

FqElem Field::mul_schoolbook(FqElem a, FqElem b) const {
  Poly m(modulus_.begin(), modulus_.end());
  Poly c = poly_mulmod(digits(a), digits(b), m, p_);
  c.resize(r_, 0);
  return encode(c);
}

FqElem Field::mul(FqElem a, FqElem b) const {
  if (has_tables()) return from_log(log_mul(to_log(a), to_log(b)));
  if (r_ == 1) return {a.code * b.code % p_};
  return mul_schoolbook(a, b);
}

FqElem Field::pow(FqElem a, std::uint64_t e) const {
  if (has_tables()) return from_log(log_pow(to_log(a), e));
  FqElem result = one();
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

FqElem Field::inv(FqElem a) const {
  if (a.code == 0) throw InvariantError("inverse of zero");
  if (has_tables()) {
    std::uint32_t k = to_log(a);
    return from_log(k == 0 ? 0 : group_order_ - k);
  }
  return pow(a, order_ - 2);
}

SquareClass Field::square_class(FqElem x) const {
  if (has_tables()) return log_square_class(to_log(x));
  return square_class_euler(x);
}

SquareClass Field::square_class_euler(FqElem x) const {
  if (x.code == 0) return SquareClass::zero;
  FqElem result = one();
  FqElem base = x;
  for (std::uint64_t e = (order_ - 1) / 2; e; e >>= 1) {
    if (e & 1) result = mul_schoolbook(result, base);
    base = mul_schoolbook(base, base);
  }
  return result == one() ? SquareClass::square : SquareClass::nonsquare;
}

FqElem Field::generator() const {
  if (!has_tables()) throw ResourceError("generator requires a table-backed field");
  return generator_;
}

void Field::build_tables() {
  const std::uint64_t n = order_ - 1;
  group_order_ = static_cast<std::uint32_t>(n);
  const auto factors = prime_factors(n);

  auto slow_pow = [&](FqElem a, std::uint64_t e) {
    FqElem result = one();
    while (e) {
      if (e & 1) result = mul_schoolbook(result, a);
      a = mul_schoolbook(a, a);
      e >>= 1;
    }
    return result;
  };
  for (std::uint64_t c = 1; c < order_; ++c) {
    bool primitive = true;
    for (std::uint64_t l : factors) {
      if (slow_pow({c}, n / l) == one()) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator_ = {c};
      break;
    }
  }

  exp_.resize(n);
  log_.assign(order_, group_order_);
  FqElem cur = one();
  for (std::uint64_t k = 0; k < n; ++k) {
    exp_[k] = static_cast<std::uint32_t>(cur.code);
    log_[cur.code] = static_cast<std::uint32_t>(k);
    cur = mul_schoolbook(cur, generator_);
  }
  if (cur != one()) throw InvariantError("generator order mismatch");

  zech_.resize(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    FqElem v = add(FqElem{exp_[k]}, one());
    zech_[k] = log_[v.code];
  }
}

Embedding::Embedding(FieldPtr source, FieldPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
  const Field& src = *source_;
  const Field& dst = *target_;
  if (src.characteristic() != dst.characteristic() || dst.degree() % src.degree() != 0) {
    throw InputError("target field does not contain the source field");
  }
  const std::uint32_t a = src.degree();
  if (a == 1) {
    powers_ = {dst.one()};
    return;
  }
  if (a == dst.degree()) {
    powers_.clear();
    FqElem x = src.from_coeffs(std::vector<std::uint32_t>{0, 1});
    FqElem cur = src.one();
    for (std::uint32_t i = 0; i < a; ++i) {
      powers_.push_back(cur);
      cur = src.mul(cur, x);
    }
    return;
  }

  // The subfield of order Q_a is the image of y -> y^((Q_b-1)/(Q_a-1)) plus 0;
  // an image of full order Q_a - 1 generates it.
  const std::uint64_t qa1 = src.order() - 1;
  const std::uint64_t cofactor = (dst.order() - 1) / qa1;
  const auto factors = prime_factors(qa1);
  const auto& mod = src.modulus();
  auto eval_modulus = [&](FqElem t) {
    FqElem acc = dst.zero();
    for (std::size_t i = mod.size(); i-- > 0;) acc = dst.add(dst.mul(acc, t), dst.from_int(mod[i]));
    return acc;
  };
  for (std::uint64_t c = 2; c < dst.order(); ++c) {
    FqElem h = dst.pow({c}, cofactor);
    bool full = h != dst.one() || qa1 == 1;
    for (std::uint64_t l : factors) {
      if (dst.pow(h, qa1 / l) == dst.one()) full = false;
    }
    if (!full) continue;
    FqElem best{dst.order()};
    FqElem t = dst.one();
    for (std::uint64_t k = 0; k < qa1; ++k) {
      if (eval_modulus(t).code == 0 && t < best) best = t;
      t = dst.mul(t, h);
    }
    if (best.code == dst.order()) break;
    FqElem cur = dst.one();
    for (std::uint32_t i = 0; i < a; ++i) {
      powers_.push_back(cur);
      cur = dst.mul(cur, best);
    }
    return;
  }
  throw InvariantError("no root of the source modulus in the target field");
}

FqElem Embedding::operator()(FqElem x) const {
  const Field& dst = *target_;
  auto c = source_->coeffs(x);
  FqElem acc = dst.zero();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    acc = dst.add(acc, dst.mul(dst.from_int(c[i]), powers_[i]));
  }
  return acc;
}

FqElem embed(FqElem x, const FieldPtr& source, const FieldPtr& target) {
  return Embedding(source, target)(x);
}

}  // namespace fanozeta
