#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fanozeta/counting.hpp"

namespace fanozeta {

/// Integer polynomial, coefficients from T^0 upwards. Trailing zeros are
/// trimmed by every function that returns one.
using IntPoly = std::vector<mpz_class>;

void trim(IntPoly& p);
int degree(const IntPoly& p);  // -1 for the zero polynomial
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
IntPoly poly_sub(const IntPoly& a, const IntPoly& b);
/// P(c T).
IntPoly poly_scale_var(const IntPoly& p, const mpz_class& c);
/// T^deg P(1/T).
IntPoly poly_reverse(const IntPoly& p);
IntPoly poly_derivative(const IntPoly& p);
/// Quotient when b divides a in Z[T], nothing otherwise.
std::optional<IntPoly> exact_quotient(const IntPoly& a, const IntPoly& b);
mpq_class poly_eval(const IntPoly& p, const mpq_class& x);
/// Squarefree part of p made primitive, p / gcd(p, p') over Q.
IntPoly squarefree_part(const IntPoly& p);
std::string poly_to_string(const IntPoly& p, const char* var = "T");

/// det(1 - Frob T) on a cohomology group of weight w over F_q.
struct WeilPolynomial {
  IntPoly coeffs;
  unsigned weight = 1;
  std::uint64_t q = 0;

  int degree() const { return fanozeta::degree(coeffs); }
  const mpz_class& operator[](std::size_t k) const { return coeffs.at(k); }
  friend bool operator==(const WeilPolynomial&, const WeilPolynomial&) = default;
};

/// Newton's identities on polynomials with constant term 1:
/// k a_k = -sum_{i=1..k} a_{k-i} s_i. Throws InvariantError on a non-integral step.
IntPoly coeffs_from_power_sums(std::span<const mpz_class> s, std::size_t degree);
std::vector<mpz_class> power_sums(const IntPoly& p, std::size_t n);
std::vector<mpz_class> power_sums(const WeilPolynomial& p, std::size_t n);

/// s_r = -D_r for the levels 1..complete_through() of the report.
std::vector<mpz_class> traces_from_counts(const CountReport& report);

/// Degree-10 weight-1 polynomial from s_1..s_5 and the functional equation.
/// Throws InputError unless exactly five traces are given.
WeilPolynomial p1_from_traces(std::uint64_t q, std::span<const mpz_class> s);
WeilPolynomial p1_from_prefix(std::uint64_t q, std::span<const mpz_class> a1_to_a5);

/// a_{10-k} = q^{5-k} a_k for k = 0..5 and a_0 = 1.
bool satisfies_functional_equation(const WeilPolynomial& p1);

/// prod_{i<j} (1 - w_i w_j T) through pair power sums (s_r^2 - s_{2r}) / 2.
WeilPolynomial wedge_square(const WeilPolynomial& p);

/// Sign c with q^{wd/2} T^d P(1/(q^w T)) = c P(T), or 0 if neither sign works.
int functional_equation_sign(const WeilPolynomial& p);

/// Multiplicity of (1 - qT) in P2.
unsigned picard_number(const WeilPolynomial& p2);

const IntPoly& cyclotomic_poly(unsigned n);
unsigned euler_phi(unsigned n);

inline constexpr unsigned kCyclotomicScan = 200;

/// Number of reciprocal roots of P2 equal to q times a root of unity,
/// by exact division of reverse(P2)(qT) by Phi_n, n <= kCyclotomicScan.
unsigned geometric_picard(const WeilPolynomial& p1);
unsigned geometric_picard_from_p2(const WeilPolynomial& p2);

struct ArtinTate {
  mpq_class value;
  bool q10_form = false;  // q^10 * value is an integer
};

/// R(1/q) where P2 = (1 - qT)^rho R.
ArtinTate artin_tate(const WeilPolynomial& p2, unsigned rho);

enum class SquareVerdict { square, not_square, indeterminate };

/// Exact test on the reduced numerator and denominator; never indeterminate
/// since GMP decides perfect squares directly.
SquareVerdict is_rational_square(const mpq_class& x);

/// Prime factorization by trial division up to `bound`; the last factor may
/// be an unfactored cofactor (flagged by the returned bool).
std::pair<std::vector<std::pair<mpz_class, unsigned>>, bool> factor_trial(
    mpz_class n, std::uint64_t bound = 10'000'000);
std::string factorization_string(const mpq_class& x);

/// N_r(F) = 1 + q^r + q^2r + q^3r - q^r s_r.
mpz_class nr_cubic(std::uint64_t q, unsigned r, const mpz_class& s_r);
/// N_r(S) = 1 - (1 + q^r) s_r + (s_r^2 - s_2r) / 2 + q^2r. Throws
/// InvariantError if negative.
mpz_class nr_fano(const WeilPolynomial& p1, unsigned r);

/// Rational function prod numerator / prod denominator, every factor with
/// constant term 1.
struct ZetaFunction {
  std::vector<IntPoly> numerator;
  std::vector<IntPoly> denominator;

  /// Power series coefficients z_0..z_n.
  std::vector<mpz_class> series(unsigned n) const;
  /// N_1..N_n from the series through T Z'/Z = sum N_r T^r.
  std::vector<mpz_class> counts(unsigned n) const;
};

/// Numerator P1(qT), denominator (1-T)(1-qT)(1-q^2T)(1-q^3T).
ZetaFunction zeta_cubic(const WeilPolynomial& p1);
/// q^15 T^10 P1(1/(q^2 T)); equals P1(qT) under the functional equation.
WeilPolynomial p3_fano(const WeilPolynomial& p1);
/// Numerator P1 P3, denominator (1-T) P2 (1-q^2T).
ZetaFunction zeta_fano(const WeilPolynomial& p1, const WeilPolynomial& p2);

struct RootCheck {
  bool converged = false;
  bool on_circle = false;
  double max_deviation = 0.0;   // max | |z| - modulus |
  double max_radius = 0.0;      // largest inclusion radius n|P(z)/P'(z)|
  unsigned iterations = 0;
  std::vector<std::complex<double>> roots;  // of the squarefree part
};

inline constexpr double kDefaultTol = 1e-10;

/// Aberth iteration on the squarefree part; a root counts as on the circle
/// when its modulus plus its inclusion radius stays within tol of `modulus`.
RootCheck roots_on_circle(const IntPoly& p, double modulus, double tol = kDefaultTol);

struct LastTraceScan {
  std::uint64_t q = 0;
  IntPoly prefix;       // a_0..a_4
  double radius = 0.0;  // (10/5) q^(5/2)
  double center = 0.0;  // a_5 at s_5 = 0
  std::int64_t lo = 0, hi = 0;
  std::vector<std::int64_t> passing;
  std::vector<std::int64_t> indeterminate;
};

/// Scans a_5 over the disk of the given radius around its value at s_5 = 0,
/// widened by `margin`, completes each candidate by the functional equation
/// and keeps those with all roots on |T| = q^(-1/2).
LastTraceScan feasible_last_trace(std::uint64_t q, std::span<const mpz_class> a1_to_a4,
                                  double tol = kDefaultTol, std::int64_t margin = 2);

struct WeilData {
  std::uint64_t q = 0;
  std::vector<mpz_class> traces;
  WeilPolynomial p1;
  WeilPolynomial p2;
  bool functional_equation = false;
  int p2_sign = 0;
  unsigned rho = 0;
  std::optional<unsigned> rho_geom;
  ArtinTate artin_tate;
  RootCheck p1_roots;
};

struct WeilOptions {
  bool geometric = false;
  double tol = kDefaultTol;
};

/// Everything derived from s_1..s_5. Throws InvariantError when a structural
/// property fails (functional equation of P2, (1-qT)^5 | P2, leading term).
WeilData analyze(std::uint64_t q, std::span<const mpz_class> traces, const WeilOptions& options = {});

}  // namespace fanozeta
