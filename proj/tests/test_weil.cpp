#include <cmath>
#include <random>

#include "doctest.h"
#include "fanozeta/errors.hpp"
#include "fanozeta/weil.hpp"

using namespace fanozeta;

namespace {

std::vector<mpz_class> Z(std::initializer_list<long> xs) {
  std::vector<mpz_class> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

mpz_class pw(unsigned long b, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

const std::vector<mpz_class> kTraces5 = Z({0, -14, -24, 82, -120});
const std::vector<mpz_class> kTraces7 = Z({-4, -14, -22, -154, -74});

IntPoly trivial_p1(unsigned long q) {
  IntPoly p(11, 0);
  p[0] = 1;
  p[10] = pw(q, 5);
  return p;
}

}  // namespace

TEST_CASE("traces from counts") {
  CountReport rep;
  const long d[] = {0, 14, 24, -82, 120};
  for (unsigned r = 1; r <= 5; ++r) {
    CountRow row;
    row.r = r;
    row.difference = d[r - 1];
    rep.rows.push_back(row);
  }
  CHECK(traces_from_counts(rep) == kTraces5);
  for (auto& row : rep.rows) row.difference = 0;
  CHECK(traces_from_counts(rep) == Z({0, 0, 0, 0, 0}));
  rep.rows.pop_back();
  CHECK(traces_from_counts(rep).size() == 4);
}

TEST_CASE("P1 from traces") {
  auto p5 = p1_from_traces(5, kTraces5);
  CHECK(p5.coeffs == Z({1, 0, 7, 8, 4, 80, 20, 200, 875, 0, 3125}));
  // The same polynomial as a product of its two printed factors.
  IntPoly a = Z({1, 0, 5});
  IntPoly b = Z({1, 0, 2, 8, -6, 40, 50, 0, 625});
  CHECK(poly_mul(a, b) == p5.coeffs);
  auto p7 = p1_from_traces(7, kTraces7);
  CHECK(p7.coeffs == Z({1, 4, 15, 46, 159, 460, 1113, 2254, 5145, 9604, 16807}));
  CHECK(satisfies_functional_equation(p7));
  for (unsigned long q : {3ul, 5ul, 11ul, 49ul}) {
    CHECK(p1_from_traces(q, Z({0, 0, 0, 0, 0})).coeffs == trivial_p1(q));
  }
  CHECK_THROWS_AS(p1_from_traces(5, Z({1, 0, 0, 0, 0})), InvariantError);
  CHECK_THROWS_AS(p1_from_traces(5, Z({0, 0, 0, 0})), InputError);
}

TEST_CASE("power sums") {
  WeilPolynomial t{trivial_p1(5), 1, 5};
  auto s = power_sums(t, 10);
  for (int i = 0; i < 9; ++i) CHECK(s[i] == 0);
  CHECK(s[9] == -10 * pw(5, 5));
  CHECK(power_sums(p1_from_traces(7, kTraces7), 5) == kTraces7);
  CHECK(power_sums(Z({1, -5, 6}), 3) == Z({5, 13, 35}));
}

TEST_CASE("Newton round trip on random admissible trace vectors") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> coeff(-40, 40);
  const unsigned long qs[] = {3, 5, 7, 11, 25};
  for (int t = 0; t < 1000; ++t) {
    const unsigned long q = qs[t % 5];
    // Any integer prefix gives integral power sums, hence an admissible vector.
    IntPoly prefix = {1, coeff(rng), coeff(rng), coeff(rng), coeff(rng), coeff(rng)};
    auto s = power_sums(prefix, 5);
    auto p1 = p1_from_traces(q, s);
    REQUIRE(power_sums(p1, 5) == s);
    for (int k = 0; k <= 5; ++k) REQUIRE(p1.coeffs[k] == prefix[k]);
    REQUIRE(satisfies_functional_equation(p1));
    REQUIRE(p1_from_prefix(q, std::span(prefix).subspan(1)) == p1);
  }
}

TEST_CASE("wedge square") {
  CHECK(wedge_square(WeilPolynomial{Z({1, -5, 6}), 1, 1}).coeffs == Z({1, -6}));
  for (auto [q, s] : {std::pair{5ul, kTraces5}, {7ul, kTraces7}}) {
    auto p1 = p1_from_traces(q, s);
    auto p2 = wedge_square(p1);
    CHECK(p2.degree() == 45);
    CHECK(p2.weight == 2);
    CHECK(p2[45] == -pw(q, 45));
    CHECK(functional_equation_sign(p2) == -1);
    CHECK(picard_number(p2) == 5);
    IntPoly lin = {1, -mpz_class(q)};
    IntPoly fifth = {1};
    for (int i = 0; i < 5; ++i) fifth = poly_mul(fifth, lin);
    CHECK(exact_quotient(p2.coeffs, fifth).has_value());
  }
  // Trivial case: every reciprocal root is q times a 20th root of unity.
  const unsigned long q = 3;
  auto p2 = wedge_square(WeilPolynomial{trivial_p1(q), 1, q});
  CHECK(p2[45] == -pw(q, 45));
  auto rc = roots_on_circle(p2.coeffs, 1.0 / q);
  REQUIRE(rc.converged);
  for (auto z : rc.roots) {
    auto g = 1.0 / z;  // reciprocal root
    CHECK(std::abs(std::pow(g / double(q), 20) - 1.0) < 1e-8);
  }
}

TEST_CASE("Picard numbers") {
  for (unsigned long q : {3ul, 5ul, 7ul}) {
    WeilPolynomial t{trivial_p1(q), 1, q};
    auto p2 = wedge_square(t);
    CHECK(picard_number(p2) == 5);
    CHECK(geometric_picard(t) == 45);
    CHECK(geometric_picard_from_p2(p2) == 45);
  }
  // Klein cubic reductions as computed by the counting pipeline (see the
  // pipeline tests). The supersingular case is the one where 11 is inert in
  // Q(sqrt(-11)), i.e. (p/11) = -1: p = 7, not p = 3.
  CHECK(geometric_picard(WeilPolynomial{Z({1, 0, 0, 0, 0, 31, 0, 0, 0, 0, 243}), 1, 3}) == 25);
  CHECK(geometric_picard(WeilPolynomial{Z({1, 0, 0, 0, 0, -57, 0, 0, 0, 0, 3125}), 1, 5}) == 25);
  CHECK(geometric_picard(WeilPolynomial{trivial_p1(7), 1, 7}) == 45);
  // A generic polynomial has no extra classes.
  auto p5 = p1_from_traces(5, kTraces5);
  CHECK(geometric_picard(p5) >= picard_number(wedge_square(p5)));
  CHECK(geometric_picard(p5) <= 45);
  // (1 - qT)^5 alone.
  IntPoly toy = {1};
  for (int i = 0; i < 5; ++i) toy = poly_mul(toy, IntPoly{1, -7});
  WeilPolynomial tp{toy, 2, 7};
  CHECK(picard_number(tp) == 5);
  CHECK(artin_tate(tp, 5).value == 1);
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1) == Z({-1, 1}));
  CHECK(cyclotomic_poly(2) == Z({1, 1}));
  CHECK(cyclotomic_poly(12) == Z({1, 0, -1, 0, 1}));
  CHECK(degree(cyclotomic_poly(105)) == 48);
  CHECK(euler_phi(200) == 80);
  // Scanning n <= 200 is enough: larger n all have phi(n) > 45.
  unsigned worst = 1000;
  for (unsigned n = kCyclotomicScan + 1; n <= 10000; ++n) worst = std::min(worst, euler_phi(n));
  CHECK(worst > 45);
}

TEST_CASE("Artin-Tate values") {
  auto a5 = artin_tate(wedge_square(p1_from_traces(5, kTraces5)), 5);
  CHECK(a5.value == mpq_class(pw(2, 18) * pw(3, 5) * 157, pw(5, 10)));
  CHECK(a5.q10_form);
  auto a7 = artin_tate(wedge_square(p1_from_traces(7, kTraces7)), 5);
  CHECK(a7.value == mpq_class(pw(2, 4) * pw(83, 2) * 557 * 5737, pw(7, 10)));
  CHECK(a7.q10_form);
  CHECK(factorization_string(a5.value) == "2^18*3^5*157/5^10");
  CHECK(is_rational_square(a5.value / a7.value) == SquareVerdict::not_square);
}

TEST_CASE("rational squares") {
  CHECK(is_rational_square(mpq_class(4, 9)) == SquareVerdict::square);
  CHECK(is_rational_square(mpq_class(-1, 4)) == SquareVerdict::not_square);
  CHECK(is_rational_square(mpq_class(8, 9)) == SquareVerdict::not_square);
  CHECK(is_rational_square(mpq_class(pw(10007, 2) * pw(3, 4), pw(7, 6))) == SquareVerdict::square);
}

TEST_CASE("point counts") {
  CHECK(nr_cubic(5, 1, 0) == 156);
  CHECK(nr_cubic(7, 1, -4) == 428);
  CHECK(nr_cubic(3, 2, 0) == 1 + 9 + 81 + 729);
  CHECK(nr_fano(p1_from_traces(5, kTraces5), 1) == 33);
  CHECK(nr_fano(p1_from_traces(7, kTraces7), 1) == 97);
  CHECK(nr_fano(WeilPolynomial{trivial_p1(11), 1, 11}, 1) == 1 + 121);
  IntPoly bad = Z({-100, 0, 0, 0, 0});
  CHECK_THROWS_AS(nr_fano(p1_from_prefix(5, bad), 1), InvariantError);
}

TEST_CASE("zeta functions") {
  for (auto [q, s] : {std::pair{5ul, kTraces5}, {7ul, kTraces7}}) {
    auto p1 = p1_from_traces(q, s);
    auto p2 = wedge_square(p1);
    auto zc = zeta_cubic(p1);
    REQUIRE(!zc.numerator.empty());
    CHECK(zc.numerator[0][0] == 1);
    CHECK(zc.numerator[0][10] == pw(q, 15));
    auto sums = power_sums(p1, 5);
    auto nc = zc.counts(5);
    auto zf = zeta_fano(p1, p2);
    auto nf = zf.counts(5);
    for (unsigned r = 1; r <= 5; ++r) {
      CHECK(nc[r - 1] == nr_cubic(q, r, sums[r - 1]));
      CHECK(nf[r - 1] == nr_fano(p1, r));
    }
    auto p3 = p3_fano(p1);
    CHECK(p3.coeffs[0] == 1);
    CHECK(p3.coeffs == poly_scale_var(p1.coeffs, q));
  }
  auto t = WeilPolynomial{trivial_p1(5), 1, 5};
  IntPoly expect(11, 0);
  expect[0] = 1;
  expect[10] = pw(5, 15);
  CHECK(zeta_cubic(t).numerator[0] == expect);
  CHECK(zeta_fano(t, wedge_square(t)).counts(1)[0] == 26);
}

TEST_CASE("roots on the circle") {
  auto p7 = p1_from_traces(7, kTraces7);
  auto rc = roots_on_circle(p7.coeffs, 1.0 / std::sqrt(7.0), 1e-10);
  CHECK(rc.converged);
  CHECK(rc.on_circle);
  CHECK(rc.max_deviation < 1e-12);
  auto qa = p1_from_prefix(11, Z({-1, 13, 1, -28, 200}));
  CHECK(roots_on_circle(qa.coeffs, 1.0 / std::sqrt(11.0), 1e-10).on_circle);
  auto off = roots_on_circle(Z({1, -3}), 1.0, 1e-10);
  CHECK(off.converged);
  CHECK_FALSE(off.on_circle);
  // Repeated roots are handled through the squarefree part.
  IntPoly sq = poly_mul(Z({1, 0, 5}), Z({1, 0, 5}));
  CHECK(roots_on_circle(sq, 1.0 / std::sqrt(5.0)).on_circle);
}

TEST_CASE("feasible last trace") {
  auto scan = feasible_last_trace(11, Z({-1, 13, 1, -28}));
  CHECK(std::abs(scan.radius - 802.623) < 1e-3);
  CHECK(scan.lo == static_cast<std::int64_t>(std::floor(scan.center - scan.radius)) - 2);
  CHECK(scan.hi == static_cast<std::int64_t>(std::ceil(scan.center + scan.radius)) + 2);
  CHECK(scan.indeterminate.empty());
  std::vector<std::int64_t> expect;
  for (std::int64_t a = 80; a <= 332; ++a) expect.push_back(a);
  CHECK(scan.passing == expect);
  CHECK(std::find(scan.passing.begin(), scan.passing.end(), 1000) == scan.passing.end());

  auto s5 = feasible_last_trace(5, Z({0, 7, 8, 4}));
  CHECK(std::find(s5.passing.begin(), s5.passing.end(), 80) != s5.passing.end());
  auto s7 = feasible_last_trace(7, Z({4, 15, 46, 159}));
  CHECK(std::find(s7.passing.begin(), s7.passing.end(), 460) != s7.passing.end());
  // Every feasible a_5 lies in the disk, so widening the margin adds nothing.
  CHECK(feasible_last_trace(7, Z({4, 15, 46, 159}), kDefaultTol, 40).passing == s7.passing);
}

TEST_CASE("analyze") {
  auto d5 = analyze(5, kTraces5);
  CHECK(d5.functional_equation);
  CHECK(d5.p2_sign == -1);
  CHECK(d5.rho == 5);
  CHECK_FALSE(d5.rho_geom.has_value());
  CHECK(d5.p1_roots.on_circle);
  auto t = analyze(7, Z({0, 0, 0, 0, 0}), WeilOptions{true, kDefaultTol});
  CHECK(t.rho == 5);
  CHECK(t.rho_geom == 45u);
  // The functional equation alone pairs the roots, so (1 - qT)^5 | P2 holds;
  // a polynomial without Weil roots is caught by the root check instead.
  auto bogus = analyze(5, power_sums(p1_from_prefix(5, Z({-100, 0, 0, 0, 0})), 5));
  CHECK(bogus.rho >= 5);
  CHECK_FALSE(bogus.p1_roots.on_circle);
}
