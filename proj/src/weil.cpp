#include "fanozeta/weil.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "fanozeta/errors.hpp"

namespace fanozeta {

namespace {

mpz_class mpz_pow(std::uint64_t base, unsigned e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, e);
  return out;
}

using QPoly = std::vector<mpq_class>;

void trim_q(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qpoly_mod(QPoly a, const QPoly& b) {
  trim_q(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    mpq_class c = a.back() / b.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    trim_q(a);
  }
  return a;
}

IntPoly primitive_from_q(const QPoly& p) {
  mpz_class lcm = 1;
  for (const auto& c : p) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  IntPoly out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(mpz_class(c * lcm));
  mpz_class g = 0;
  for (const auto& c : out) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g != 0) {
    for (auto& c : out) c /= g;
  }
  if (!out.empty() && out.front() < 0) {
    for (auto& c : out) c = -c;
  }
  trim(out);
  return out;
}

IntPoly linear(const mpz_class& c) { return {mpz_class(1), mpz_class(-c)}; }

}  // namespace

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const IntPoly& p) {
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] != 0) return static_cast<int>(i);
  }
  return -1;
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly out(a.size() + b.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

IntPoly poly_sub(const IntPoly& a, const IntPoly& b) {
  IntPoly out(std::max(a.size(), b.size()), mpz_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

IntPoly poly_scale_var(const IntPoly& p, const mpz_class& c) {
  IntPoly out = p;
  mpz_class f = 1;
  for (auto& v : out) {
    v *= f;
    f *= c;
  }
  trim(out);
  return out;
}

IntPoly poly_reverse(const IntPoly& p) {
  const int d = degree(p);
  if (d < 0) return {};
  IntPoly out(p.begin(), p.begin() + d + 1);
  std::reverse(out.begin(), out.end());
  trim(out);
  return out;
}

IntPoly poly_derivative(const IntPoly& p) {
  IntPoly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * static_cast<unsigned long>(i));
  trim(out);
  return out;
}

std::optional<IntPoly> exact_quotient(const IntPoly& a_in, const IntPoly& b_in) {
  IntPoly a = a_in, b = b_in;
  trim(a);
  trim(b);
  if (b.empty()) throw InvariantError("division by the zero polynomial");
  if (a.empty()) return IntPoly{};
  if (a.size() < b.size()) return std::nullopt;
  const std::size_t db = b.size() - 1;
  IntPoly quot(a.size() - db, mpz_class(0));
  for (std::size_t i = quot.size(); i-- > 0;) {
    const mpz_class& top = a[i + db];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    mpz_class c = top / b.back();
    quot[i] = c;
    for (std::size_t k = 0; k <= db; ++k) a[i + k] -= c * b[k];
  }
  for (const auto& v : a) {
    if (v != 0) return std::nullopt;
  }
  trim(quot);
  return quot;
}

mpq_class poly_eval(const IntPoly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  acc.canonicalize();
  return acc;
}

IntPoly squarefree_part(const IntPoly& p_in) {
  IntPoly p = p_in;
  trim(p);
  if (degree(p) < 1) return p;
  QPoly a(p.begin(), p.end());
  IntPoly dp = poly_derivative(p);
  QPoly b(dp.begin(), dp.end());
  while (!b.empty()) {
    QPoly r = qpoly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  IntPoly g = primitive_from_q(a);
  if (degree(g) == 0) return primitive_from_q(QPoly(p.begin(), p.end()));
  auto q = exact_quotient(p, g);
  if (!q) throw InvariantError("gcd does not divide its polynomial");
  return primitive_from_q(QPoly(q->begin(), q->end()));
}

std::string poly_to_string(const IntPoly& p, const char* var) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    mpz_class c = p[i];
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    mpz_class a = abs(c);
    if (i == 0 || a != 1) os << a.get_str();
    if (i > 0) {
      if (a != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

IntPoly coeffs_from_power_sums(std::span<const mpz_class> s, std::size_t degree) {
  if (s.size() < degree) throw InputError("not enough power sums");
  IntPoly a(degree + 1, mpz_class(0));
  a[0] = 1;
  for (std::size_t k = 1; k <= degree; ++k) {
    mpz_class sum = 0;
    for (std::size_t i = 1; i <= k; ++i) sum += a[k - i] * s[i - 1];
    if (!mpz_divisible_ui_p(sum.get_mpz_t(), k)) {
      throw InvariantError("non-integral Newton step at k = " + std::to_string(k) +
                           "; invalid trace vector");
    }
    mpz_class quot = sum / static_cast<unsigned long>(k);
    a[k] = -quot;
  }
  return a;
}

std::vector<mpz_class> power_sums(const IntPoly& p, std::size_t n) {
  if (p.empty() || p[0] != 1) throw InputError("power sums need constant term 1");
  std::vector<mpz_class> s(n);
  auto a = [&](std::size_t k) -> mpz_class { return k < p.size() ? p[k] : mpz_class(0); };
  for (std::size_t k = 1; k <= n; ++k) {
    mpz_class v = -a(k) * static_cast<unsigned long>(k);
    for (std::size_t i = 1; i < k; ++i) v -= a(k - i) * s[i - 1];
    s[k - 1] = v;
  }
  return s;
}

std::vector<mpz_class> power_sums(const WeilPolynomial& p, std::size_t n) {
  return power_sums(p.coeffs, n);
}

std::vector<mpz_class> traces_from_counts(const CountReport& report) {
  std::vector<mpz_class> s;
  const unsigned n = report.complete_through();
  for (unsigned r = 1; r <= n; ++r) s.emplace_back(-mpz_class(static_cast<long>(report.row(r)->difference)));
  return s;
}

WeilPolynomial p1_from_prefix(std::uint64_t q, std::span<const mpz_class> a) {
  if (a.size() != 5) throw InputError("a degree-10 prefix needs a_1..a_5");
  WeilPolynomial p;
  p.q = q;
  p.weight = 1;
  p.coeffs.assign(11, mpz_class(0));
  p.coeffs[0] = 1;
  for (std::size_t k = 1; k <= 5; ++k) p.coeffs[k] = a[k - 1];
  for (unsigned k = 0; k < 5; ++k) p.coeffs[10 - k] = mpz_pow(q, 5 - k) * p.coeffs[k];
  return p;
}

WeilPolynomial p1_from_traces(std::uint64_t q, std::span<const mpz_class> s) {
  if (s.size() != 5) {
    throw InputError("P1 needs the traces s_1..s_5, got " + std::to_string(s.size()));
  }
  IntPoly a = coeffs_from_power_sums(s, 5);
  return p1_from_prefix(q, std::span<const mpz_class>(a).subspan(1, 5));
}

bool satisfies_functional_equation(const WeilPolynomial& p) {
  if (p.coeffs.size() != 11 || p.coeffs[0] != 1) return false;
  for (unsigned k = 0; k <= 5; ++k) {
    if (p.coeffs[10 - k] != mpz_pow(p.q, 5 - k) * p.coeffs[k]) return false;
  }
  return true;
}

WeilPolynomial wedge_square(const WeilPolynomial& p) {
  const int d = p.degree();
  if (d < 2) throw InputError("wedge square needs degree at least 2");
  const std::size_t m = static_cast<std::size_t>(d) * (d - 1) / 2;
  auto s = power_sums(p, 2 * m);
  std::vector<mpz_class> pair(m);
  for (std::size_t r = 1; r <= m; ++r) {
    mpz_class v = s[r - 1] * s[r - 1] - s[2 * r - 1];
    if (!mpz_even_p(v.get_mpz_t())) throw InvariantError("odd pair power sum");
    pair[r - 1] = v / 2;
  }
  WeilPolynomial out;
  out.q = p.q;
  out.weight = 2 * p.weight;
  out.coeffs = coeffs_from_power_sums(pair, m);
  return out;
}

int functional_equation_sign(const WeilPolynomial& p) {
  const int d = p.degree();
  if (d < 0 || (p.weight * d) % 2 != 0) return 0;
  const mpz_class half = mpz_pow(p.q, p.weight * d / 2);
  for (int c : {1, -1}) {
    bool ok = true;
    for (int j = 0; j <= d && ok; ++j) {
      mpz_class lhs = p.coeffs[d - j] * mpz_pow(p.q, p.weight * j);
      mpz_class rhs = p.coeffs[j] * half * c;
      ok = lhs == rhs;
    }
    if (ok) return c;
  }
  return 0;
}

unsigned picard_number(const WeilPolynomial& p2) {
  const IntPoly factor = linear(mpz_class(static_cast<unsigned long>(p2.q)));
  IntPoly cur = p2.coeffs;
  unsigned m = 0;
  while (degree(cur) >= 1) {
    auto next = exact_quotient(cur, factor);
    if (!next) break;
    cur = std::move(*next);
    ++m;
  }
  return m;
}

unsigned euler_phi(unsigned n) {
  unsigned out = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    out -= out / p;
  }
  if (n > 1) out -= out / n;
  return out;
}

const IntPoly& cyclotomic_poly(unsigned n) {
  if (n == 0) throw InputError("cyclotomic index must be positive");
  static std::mutex mutex;
  static std::map<unsigned, IntPoly> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  IntPoly num(n + 1, mpz_class(0));
  num[0] = -1;
  num[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d) continue;
    auto q = exact_quotient(num, cyclotomic_poly(d));
    if (!q) throw InvariantError("cyclotomic division failed");
    num = std::move(*q);
  }
  std::lock_guard lock(mutex);
  return cache.try_emplace(n, std::move(num)).first->second;
}

unsigned geometric_picard_from_p2(const WeilPolynomial& p2) {
  const int d = p2.degree();
  IntPoly g = poly_scale_var(poly_reverse(p2.coeffs), mpz_class(static_cast<unsigned long>(p2.q)));
  unsigned total = 0;
  for (unsigned n = 1; n <= kCyclotomicScan; ++n) {
    const unsigned phi = euler_phi(n);
    if (phi > static_cast<unsigned>(d)) continue;
    const IntPoly& c = cyclotomic_poly(n);
    while (degree(g) >= static_cast<int>(phi)) {
      auto q = exact_quotient(g, c);
      if (!q) break;
      g = std::move(*q);
      total += phi;
    }
  }
  return total;
}

unsigned geometric_picard(const WeilPolynomial& p1) { return geometric_picard_from_p2(wedge_square(p1)); }

ArtinTate artin_tate(const WeilPolynomial& p2, unsigned rho) {
  const IntPoly factor = linear(mpz_class(static_cast<unsigned long>(p2.q)));
  IntPoly r = p2.coeffs;
  for (unsigned i = 0; i < rho; ++i) {
    auto next = exact_quotient(r, factor);
    if (!next) throw InvariantError("(1 - qT)^rho does not divide P2");
    r = std::move(*next);
  }
  ArtinTate out;
  out.value = poly_eval(r, mpq_class(1, static_cast<unsigned long>(p2.q)));
  mpq_class scaled = out.value * mpq_class(mpz_pow(p2.q, 10));
  scaled.canonicalize();
  out.q10_form = scaled.get_den() == 1;
  return out;
}

SquareVerdict is_rational_square(const mpq_class& x_in) {
  mpq_class x = x_in;
  x.canonicalize();
  if (x <= 0) return SquareVerdict::not_square;
  bool sq = mpz_perfect_square_p(x.get_num_mpz_t()) && mpz_perfect_square_p(x.get_den_mpz_t());
  return sq ? SquareVerdict::square : SquareVerdict::not_square;
}

std::pair<std::vector<std::pair<mpz_class, unsigned>>, bool> factor_trial(mpz_class n,
                                                                           std::uint64_t bound) {
  std::vector<std::pair<mpz_class, unsigned>> out;
  n = abs(n);
  if (n <= 1) return {out, true};
  for (std::uint64_t p = 2; p <= bound; p += (p == 2 ? 1 : 2)) {
    mpz_class pp(static_cast<unsigned long>(p));
    if (pp * pp > n) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= pp;
      ++e;
    }
    if (e) out.emplace_back(pp, e);
  }
  if (n == 1) return {out, true};
  mpz_class b(static_cast<unsigned long>(bound));
  bool complete = n <= b * b || mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
  out.emplace_back(n, 1);
  return {out, complete};
}

std::string factorization_string(const mpq_class& x_in) {
  mpq_class x = x_in;
  x.canonicalize();
  auto part = [](const mpz_class& n) {
    if (n == 1) return std::string("1");
    std::string s;
    for (const auto& [p, e] : factor_trial(n).first) {
      if (!s.empty()) s += "*";
      s += p.get_str();
      if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
  };
  std::string out = x < 0 ? "-" : "";
  out += part(abs(x.get_num()));
  if (x.get_den() != 1) out += "/" + part(x.get_den());
  return out;
}

mpz_class nr_cubic(std::uint64_t q, unsigned r, const mpz_class& s_r) {
  mpz_class qr = mpz_pow(q, r);
  return 1 + qr + qr * qr + qr * qr * qr - qr * s_r;
}

mpz_class nr_fano(const WeilPolynomial& p1, unsigned r) {
  auto s = power_sums(p1, 2 * r);
  const mpz_class& sr = s[r - 1];
  mpz_class pair = sr * sr - s[2 * r - 1];
  if (!mpz_even_p(pair.get_mpz_t())) throw InvariantError("odd pair power sum");
  mpz_class qr = mpz_pow(p1.q, r);
  mpz_class n = 1 - (1 + qr) * sr + pair / 2 + qr * qr;
  if (n < 0) throw InvariantError("negative point count on S at r = " + std::to_string(r));
  return n;
}

std::vector<mpz_class> ZetaFunction::series(unsigned n) const {
  std::vector<mpz_class> num(n + 1, mpz_class(0));
  num[0] = 1;
  auto mul_trunc = [n](std::vector<mpz_class>& acc, const IntPoly& f) {
    std::vector<mpz_class> out(n + 1, mpz_class(0));
    for (unsigned i = 0; i <= n; ++i) {
      if (acc[i] == 0) continue;
      for (unsigned j = 0; j < f.size() && i + j <= n; ++j) out[i + j] += acc[i] * f[j];
    }
    acc = std::move(out);
  };
  for (const auto& f : numerator) mul_trunc(num, f);
  for (const auto& f : denominator) {
    if (f.empty() || f[0] != 1) throw InvariantError("zeta factor without constant term 1");
    std::vector<mpz_class> inv(n + 1, mpz_class(0));
    inv[0] = 1;
    for (unsigned k = 1; k <= n; ++k) {
      mpz_class v = 0;
      for (unsigned j = 1; j <= k && j < f.size(); ++j) v -= f[j] * inv[k - j];
      inv[k] = v;
    }
    mul_trunc(num, inv);
  }
  return num;
}

std::vector<mpz_class> ZetaFunction::counts(unsigned n) const {
  auto z = series(n);
  std::vector<mpz_class> N(n);
  for (unsigned k = 1; k <= n; ++k) {
    mpz_class v = z[k] * k;
    for (unsigned r = 1; r < k; ++r) v -= N[r - 1] * z[k - r];
    N[k - 1] = v;
  }
  return N;
}

ZetaFunction zeta_cubic(const WeilPolynomial& p1) {
  ZetaFunction z;
  z.numerator.push_back(poly_scale_var(p1.coeffs, mpz_class(static_cast<unsigned long>(p1.q))));
  for (unsigned i = 0; i <= 3; ++i) z.denominator.push_back(linear(mpz_pow(p1.q, i)));
  return z;
}

WeilPolynomial p3_fano(const WeilPolynomial& p1) {
  if (p1.degree() != 10) throw InputError("P3 of S needs a degree-10 P1");
  WeilPolynomial out;
  out.q = p1.q;
  out.weight = 3;
  out.coeffs.assign(11, mpz_class(0));
  for (int j = 0; j <= 10; ++j) {
    const int e = 2 * j - 5;
    mpz_class v = p1.coeffs[10 - j];
    if (e >= 0) {
      v *= mpz_pow(p1.q, e);
    } else {
      mpz_class d = mpz_pow(p1.q, -e);
      if (!mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t())) {
        throw InvariantError("P3 has a non-integral coefficient");
      }
      v /= d;
    }
    out.coeffs[j] = v;
  }
  return out;
}

ZetaFunction zeta_fano(const WeilPolynomial& p1, const WeilPolynomial& p2) {
  ZetaFunction z;
  z.numerator = {p1.coeffs, p3_fano(p1).coeffs};
  z.denominator = {linear(1), p2.coeffs, linear(mpz_pow(p1.q, 2))};
  return z;
}

RootCheck roots_on_circle(const IntPoly& p_in, double modulus, double tol) {
  using C = std::complex<long double>;
  RootCheck out;
  IntPoly p = squarefree_part(p_in);
  const int n = degree(p);
  if (n < 1) throw InputError("root check needs a nonconstant polynomial");
  std::vector<long double> a(n + 1);
  for (int i = 0; i <= n; ++i) a[i] = static_cast<long double>(p[i].get_d());

  auto eval = [&](C z, C& value, C& deriv) {
    value = a[n];
    deriv = 0;
    for (int i = n; i-- > 0;) {
      deriv = deriv * z + value;
      value = value * z + a[i];
    }
  };

  // Start on a circle of the geometric-mean root modulus.
  long double r0 = std::pow(std::fabs(a[0] / a[n]), 1.0L / n);
  if (!(r0 > 0) || !std::isfinite(r0)) r0 = 1;
  std::vector<C> z(n);
  for (int k = 0; k < n; ++k) {
    long double t = 2 * std::numbers::pi_v<long double> * k / n + 0.4L;
    z[k] = std::polar(r0, t);
  }

  constexpr unsigned kMaxIter = 1000;
  for (out.iterations = 0; out.iterations < kMaxIter; ++out.iterations) {
    long double worst = 0;
    for (int i = 0; i < n; ++i) {
      C v, d;
      eval(z[i], v, d);
      if (v == C(0)) continue;
      C ratio = v / d;
      C sum = 0;
      for (int j = 0; j < n; ++j) {
        if (j != i) sum += C(1) / (z[i] - z[j]);
      }
      C w = ratio / (C(1) - ratio * sum);
      z[i] -= w;
      worst = std::max(worst, std::abs(w) / std::max(std::abs(z[i]), 1e-300L));
    }
    if (worst < 1e-18L) {
      out.converged = true;
      break;
    }
  }

  for (int i = 0; i < n; ++i) {
    C v, d;
    eval(z[i], v, d);
    long double radius = std::abs(d) > 0 ? n * std::abs(v) / std::abs(d) : INFINITY;
    out.max_radius = std::max(out.max_radius, static_cast<double>(radius));
    long double dev = std::fabs(std::abs(z[i]) - static_cast<long double>(modulus));
    out.max_deviation = std::max(out.max_deviation, static_cast<double>(dev));
    out.roots.emplace_back(static_cast<double>(z[i].real()), static_cast<double>(z[i].imag()));
  }
  if (!out.converged && out.max_radius < 1e-12) out.converged = true;
  out.on_circle = out.converged && out.max_deviation + out.max_radius <= tol;
  return out;
}

LastTraceScan feasible_last_trace(std::uint64_t q, std::span<const mpz_class> a, double tol,
                                  std::int64_t margin) {
  if (a.size() != 4) throw InputError("the last-trace scan needs a_1..a_4");
  LastTraceScan out;
  out.q = q;
  out.prefix = {mpz_class(1), a[0], a[1], a[2], a[3]};
  out.radius = 2.0 * std::pow(static_cast<double>(q), 2.5);
  // 5 a_5 = -(a_4 s_1 + a_3 s_2 + a_2 s_3 + a_1 s_4) - s_5 with |s_5| <= 10 q^(5/2),
  // so a_5 lies within the radius of the value it takes at s_5 = 0.
  const auto s = power_sums(out.prefix, 4);
  mpq_class center = a[3] * s[0] + a[2] * s[1] + a[1] * s[2] + a[0] * s[3];
  center /= -5;
  out.center = center.get_d();
  out.lo = static_cast<std::int64_t>(std::floor(out.center - out.radius)) - margin;
  out.hi = static_cast<std::int64_t>(std::ceil(out.center + out.radius)) + margin;
  const double modulus = 1.0 / std::sqrt(static_cast<double>(q));
  std::vector<mpz_class> full(a.begin(), a.end());
  full.emplace_back(0);
  for (std::int64_t c = out.lo; c <= out.hi; ++c) {
    full[4] = static_cast<long>(c);
    auto p = p1_from_prefix(q, full);
    auto check = roots_on_circle(p.coeffs, modulus, tol);
    if (!check.converged) {
      out.indeterminate.push_back(c);
    } else if (check.on_circle) {
      out.passing.push_back(c);
    }
  }
  return out;
}

WeilData analyze(std::uint64_t q, std::span<const mpz_class> traces, const WeilOptions& options) {
  WeilData d;
  d.q = q;
  d.traces.assign(traces.begin(), traces.end());
  d.p1 = p1_from_traces(q, traces);
  d.functional_equation = satisfies_functional_equation(d.p1);
  if (!d.functional_equation) throw InvariantError("P1 violates its functional equation");
  d.p2 = wedge_square(d.p1);
  if (d.p2.degree() != 45 || d.p2.coeffs[45] != -mpz_pow(q, 45)) {
    throw InvariantError("P2 leading coefficient is not -q^45");
  }
  d.p2_sign = functional_equation_sign(d.p2);
  if (d.p2_sign == 0) throw InvariantError("P2 violates its functional equation");
  d.rho = picard_number(d.p2);
  if (d.rho < 5) {
    throw InvariantError("Picard number " + std::to_string(d.rho) + " is below 5");
  }
  if (options.geometric) {
    d.rho_geom = geometric_picard_from_p2(d.p2);
    if (*d.rho_geom < d.rho || *d.rho_geom > 45) {
      throw InvariantError("geometric Picard number out of range");
    }
  }
  d.artin_tate = artin_tate(d.p2, d.rho);
  d.p1_roots = roots_on_circle(d.p1.coeffs, 1.0 / std::sqrt(static_cast<double>(q)), options.tol);
  return d;
}

}  // namespace fanozeta
