#include <random>
#include <set>

#include "doctest.h"
#include "fanozeta/counting.hpp"
#include "fanozeta/errors.hpp"
#include "fanozeta/oracle.hpp"
#include "fanozeta/pipeline.hpp"

using namespace fanozeta;

namespace {

struct Fixture {
  Resolved res;
  LineFrame frame;
};

Fixture sample(std::uint32_t p) {
  auto job = preset("paper-5");
  job.p = p;
  Resolved res = resolve(job);
  LineFrame frame = normalize(*res.cubic, *res.line);
  return {res, frame};
}

FqElem det3(const Field& F, const std::array<std::array<FqElem, 3>, 3>& m) {
  auto term = [&](int a, int b, int c) {
    return F.mul(m[0][a], F.mul(m[1][b], m[2][c]));
  };
  FqElem plus = F.add(term(0, 1, 2), F.add(term(1, 2, 0), term(2, 0, 1)));
  FqElem minus = F.add(term(2, 1, 0), F.add(term(0, 2, 1), term(1, 0, 2)));
  return F.sub(plus, minus);
}

// A random invertible 5x5 matrix over F.
Matrix random_invertible(const FieldPtr& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, F->order() - 1);
  while (true) {
    Matrix m(5, std::vector<FqElem>(5));
    for (auto& row : m)
      for (auto& x : row) x = FqElem{pick(rng)};
    if (rank(*F, m) == 5) return m;
  }
}

// G(y) = F(A y).
CubicForm pull_back(const CubicForm& F, const Matrix& A) {
  const auto& field = F.field();
  std::vector<Form> images;
  for (unsigned i = 0; i < 5; ++i) {
    std::vector<FqElem> row(A[i].begin(), A[i].end());
    images.push_back(Form::linear(field, row));
  }
  return CubicForm(F.form().substitute(images));
}

Point5 apply(const Field& F, const Matrix& A, const Point5& v) {
  Point5 out{};
  for (unsigned i = 0; i < 5; ++i) {
    FqElem s = F.zero();
    for (unsigned j = 0; j < 5; ++j) s = F.add(s, F.mul(A[i][j], v[j]));
    out[i] = s;
  }
  return out;
}

}  // namespace

TEST_CASE("normal form of the sample cubic over F_7") {
  auto fx = sample(7);
  const auto& fr = fx.frame;
  CHECK(fr.l1.to_string() == "x1");
  CHECK(fr.l2.to_string() == "x2");
  CHECK(fr.l3.to_string() == "x3");
  CHECK(fr.q1.to_string() == "x1^2 + 2*x2^2 + x2*x3 + x3^2");
  CHECK(fr.q2.to_string() == "x1*x2 + 4*x2*x3 + x3^2");
  CHECK(fr.f.to_string() == "6*x1^3 + 3*x1*x2^2 + 5*x2^3 + x2^2*x3");
  CHECK(fr.quintic.degree() == 5);
  CHECK(fr.reassembled() == fr.transformed);
}

TEST_CASE("minors and quintic match the matrix at random points") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {5u, 7u, 11u}) {
    auto fx = sample(p);
    const auto& fr = fx.frame;
    const Field& F = *fr.field;
    std::uniform_int_distribution<std::uint64_t> pick(0, p - 1);
    for (int t = 0; t < 200; ++t) {
      std::array<FqElem, 3> x{FqElem{pick(rng)}, FqElem{pick(rng)}, FqElem{pick(rng)}};
      auto ev = [&](const Form& g) { return g.eval(x); };
      std::array<std::array<FqElem, 3>, 3> M{{{ev(fr.l1), ev(fr.l2), ev(fr.q1)},
                                              {ev(fr.l2), ev(fr.l3), ev(fr.q2)},
                                              {ev(fr.q1), ev(fr.q2), ev(fr.f)}}};
      CHECK(ev(fr.quintic) == det3(F, M));
      CHECK(ev(fr.delta1) == F.sub(F.mul(M[1][1], M[2][2]), F.mul(M[1][2], M[1][2])));
      CHECK(ev(fr.delta2) == F.sub(F.mul(M[0][0], M[2][2]), F.mul(M[0][2], M[0][2])));
      CHECK(ev(fr.delta3) == F.sub(F.mul(M[0][0], M[1][1]), F.mul(M[0][1], M[0][1])));
    }
  }
}

TEST_CASE("reassembly holds after a random change of coordinates") {
  std::mt19937_64 rng(5);
  auto fx = sample(7);
  const auto& field = fx.res.field;
  for (int t = 0; t < 5; ++t) {
    Matrix A = random_invertible(field, rng);
    Matrix Ainv = inverse(*field, A);
    CubicForm G = pull_back(*fx.res.cubic, A);
    const auto& rows = fx.res.line->rows();
    Line L = Line::through(field, apply(*field, Ainv, rows[0]), apply(*field, Ainv, rows[1]));
    REQUIRE(contains_line(G, L));
    for (auto completion : {BasisCompletion::leading_columns, BasisCompletion::trailing_columns}) {
      LineFrame fr = normalize(G, L, completion);
      CHECK(fr.reassembled() == fr.transformed);
      CHECK(count_difference(fr, 1).difference == count_difference(fx.frame, 1).difference);
      CHECK(count_difference(fr, 2).difference == count_difference(fx.frame, 2).difference);
    }
  }
}

TEST_CASE("scaling the cubic leaves the difference unchanged") {
  auto fx = sample(5);
  const auto& field = fx.res.field;
  for (std::uint64_t c = 2; c < 5; ++c) {
    CubicForm G(fx.res.cubic->form().scaled(FqElem{c}));
    LineFrame fr = normalize(G, *fx.res.line);
    for (unsigned r = 1; r <= 2; ++r) {
      auto a = count_difference(fr, r), b = count_difference(fx.frame, r);
      CHECK(a.difference == b.difference);
      CHECK(a.gamma_points == b.gamma_points);
    }
  }
  (void)field;
}

TEST_CASE("normalize rejects a line not on the cubic") {
  auto fx = sample(5);
  Line L = Line::coordinate(fx.res.field, 0, 1);
  CHECK_FALSE(contains_line(*fx.res.cubic, L));
  CHECK_THROWS_AS(normalize(*fx.res.cubic, L), InputError);
}

TEST_CASE("Line::through rejects dependent points") {
  auto F = make_field(5, 1);
  Point5 a{FqElem{1}, FqElem{2}, FqElem{0}, FqElem{0}, FqElem{1}};
  Point5 b{FqElem{2}, FqElem{4}, FqElem{0}, FqElem{0}, FqElem{2}};
  CHECK_THROWS_AS(Line::through(F, a, b), InputError);
  Point5 c{FqElem{0}, FqElem{1}, FqElem{0}, FqElem{0}, FqElem{0}};
  Line L = Line::through(F, a, c);
  CHECK(L.rows()[0][0] == FqElem{1});
  CHECK(L.rows()[1][1] == FqElem{1});
}

TEST_CASE("Grassmannian enumeration over F_3") {
  CHECK(grassmannian_size(3) == 1210);
  CHECK(grassmannian_size(5) == 20306);
  auto F3 = make_field(3, 1);
  std::set<std::string> seen;
  std::uint64_t count = 0;
  for_each_line(F3, [&](const Line& L) {
    ++count;
    seen.insert(L.to_string());
    return true;
  });
  CHECK(count == 1210);
  CHECK(seen.size() == 1210);
  CHECK_THROWS_AS(for_each_line(F3, [](const Line&) { return true; }, 100), ResourceError);
}

TEST_CASE("line containment agrees with the point test") {
  auto fx = sample(3);
  std::uint64_t on = 0;
  for_each_line(fx.res.field, [&](const Line& L) {
    bool a = contains_line(*fx.res.cubic, L);
    CHECK(a == contains_line_by_points(*fx.res.cubic, L));
    on += a;
    return true;
  });
  CHECK(on == lines_on_cubic(*fx.res.cubic).size());
  CHECK(on >= 1);
}

TEST_CASE("smoothness heuristic") {
  auto k11 = resolve(preset("klein:11"));
  auto s = smoothness_heuristic(*k11.cubic, 1);
  CHECK(s.singular_point_found);
  REQUIRE(s.witness.size() == 5);
  CHECK(k11.cubic->form().eval(s.witness) == FqElem{0});
  for (unsigned v = 0; v < 5; ++v) CHECK(k11.cubic->form().partial(v).eval(s.witness) == FqElem{0});

  auto k7 = resolve(preset("klein:7"));
  CHECK_FALSE(smoothness_heuristic(*k7.cubic, 2).singular_point_found);
}

TEST_CASE("quintic singular points") {
  CHECK(quintic_singular_points(sample(7).frame, 1).points.empty());
  CHECK(quintic_singular_points(sample(5).frame, 2).points.empty());
  auto k = resolve(preset("klein:13"));
  LineFrame fr = normalize(*k.cubic, *k.line);
  auto pts = quintic_singular_points(fr, 1);
  REQUIRE(pts.points.size() == 1);
  const Field& F = *pts.field;
  for (const auto& x : pts.points) {
    CHECK(fr.quintic.eval(x) == F.zero());
    CHECK(fr.delta1.eval(x) == F.zero());
    CHECK(fr.delta2.eval(x) == F.zero());
    CHECK(fr.delta3.eval(x) == F.zero());
  }
}

TEST_CASE("cubic embedded in an extension keeps its lines") {
  auto fx = sample(5);
  auto F25 = extension_field(fx.res.field, 2);
  Embedding e(fx.res.field, F25);
  CubicForm G = fx.res.cubic->embedded(e);
  Line L = Line::coordinate(F25, 3, 4);
  CHECK(contains_line(G, L));
}
