#include <set>

#include "doctest.h"
#include "fanozeta/counting.hpp"
#include "fanozeta/pipeline.hpp"

using namespace fanozeta;

namespace {

LineFrame frame_of(const std::string& name, std::uint32_t p = 0) {
  auto job = preset(name);
  if (p) job.p = p;
  auto res = resolve(job);
  return normalize(*res.cubic, *res.line);
}

}  // namespace

TEST_CASE("P^2 enumeration order and size") {
  for (auto [p, r] : {std::pair{3u, 1u}, {5u, 1u}, {3u, 2u}}) {
    auto F = make_field(p, r);
    auto pts = enumerate_p2(F);
    const std::uint64_t Q = F->order();
    CHECK(pts.size() == Q * Q + Q + 1);
    std::set<std::vector<std::uint64_t>> seen;
    std::uint64_t i = 0;
    pts.for_each([&](std::span<const FqElem> x) {
      std::vector<std::uint64_t> v{x[0].code, x[1].code, x[2].code};
      auto expect = pts.point(i++);
      CHECK(x[0] == expect[0]);
      CHECK(x[1] == expect[1]);
      CHECK(x[2] == expect[2]);
      // First nonzero coordinate is 1.
      for (auto c : v) {
        if (c == 0) continue;
        CHECK(c == 1);
        break;
      }
      seen.insert(v);
    });
    CHECK(seen.size() == pts.size());
  }
  auto F3 = make_field(3, 1);
  auto first = enumerate_p2(F3).point(0);
  CHECK(first == std::vector<FqElem>{FqElem{1}, FqElem{0}, FqElem{0}});
  auto last = enumerate_p2(F3).point(12);
  CHECK(last == std::vector<FqElem>{FqElem{0}, FqElem{0}, FqElem{1}});
}

TEST_CASE("tallies are consistent") {
  auto fr = frame_of("paper-7");
  for (unsigned r = 1; r <= 2; ++r) {
    auto row = count_difference(fr, r);
    CHECK(row.r == r);
    CHECK(row.gamma_points == row.split + row.nonsplit + row.singular);
    CHECK(row.difference == row.split - row.nonsplit);
    const std::int64_t Q = r == 1 ? 7 : 49;
    CHECK(row.gamma_points <= Q * Q + Q + 1);
  }
}

TEST_CASE("counts do not depend on threads or chunk size") {
  auto fr = frame_of("paper-5");
  CountOptions base;
  auto ref = count_all(fr, 3, base);
  for (unsigned threads : {2u, 3u, 8u}) {
    for (std::uint64_t chunk : {std::uint64_t{1}, std::uint64_t{97}, std::uint64_t{1} << 20}) {
      if (chunk == 1 && threads != 2) continue;
      CountOptions o;
      o.threads = threads;
      o.chunk_size = chunk;
      CHECK(count_all(fr, 3, o).same_counts(ref));
    }
  }
}

TEST_CASE("log kernel agrees with plain arithmetic") {
  for (auto [name, p] : {std::pair{"paper-5", 5u}, {"paper-5", 3u}, {"klein:5", 0u}}) {
    auto fr = frame_of(name, p);
    for (unsigned r = 1; r <= 3; ++r) {
      CountOptions plain;
      plain.force_plain = true;
      CHECK(count_difference(fr, r).same_counts(count_difference(fr, r, plain)));
    }
  }
}

TEST_CASE("basis completion does not change the counts") {
  auto job = preset("paper-7");
  auto res = resolve(job);
  auto a = normalize(*res.cubic, *res.line, BasisCompletion::leading_columns);
  auto b = normalize(*res.cubic, *res.line, BasisCompletion::trailing_columns);
  for (unsigned r = 1; r <= 2; ++r) {
    CHECK(count_difference(a, r).difference == count_difference(b, r).difference);
    CHECK(count_difference(a, r).gamma_points == count_difference(b, r).gamma_points);
  }
}

TEST_CASE("singular tally equals the quintic's singular points") {
  for (auto name : {"klein:11", "klein:13", "paper-5"}) {
    auto fr = frame_of(name);
    for (unsigned r = 1; r <= 2; ++r) {
      CHECK(count_difference(fr, r).singular ==
            static_cast<std::int64_t>(quintic_singular_points(fr, r).points.size()));
    }
  }
}

TEST_CASE("frozen differences for the sample cubic") {
  // Regression values; r = 1, 2 are cross-checked by the brute-force oracle.
  auto f5 = frame_of("paper-5");
  const std::int64_t d5[] = {1, 23, -2, 75};
  for (unsigned r = 1; r <= 4; ++r) CHECK(count_difference(f5, r).difference == d5[r - 1]);
  auto f7 = frame_of("paper-7");
  const std::int64_t d7[] = {6, 14, 48};
  for (unsigned r = 1; r <= 3; ++r) CHECK(count_difference(f7, r).difference == d7[r - 1]);
}

TEST_CASE("levels beyond five follow from the Weil polynomial") {
  // Over F_3 the first five levels fix P1; levels 6 and 7 must then agree.
  auto job = preset("paper-5");
  job.p = 3;
  auto rep = run(job);
  REQUIRE(rep.weil);
  auto s = power_sums(rep.weil->p1, 7);
  auto fr = frame_of("paper-5", 3);
  for (unsigned r = 6; r <= 7; ++r) CHECK(mpz_class(count_difference(fr, r).difference) == -s[r - 1]);
}

TEST_CASE("budget stops counting with the completed rows") {
  auto fr = frame_of("paper-5");
  CountOptions o;
  o.max_points = 5000;  // 5^4 + ... fits at r = 2, not at r = 3
  try {
    count_all(fr, 5, o);
    FAIL("expected CountInterrupted");
  } catch (const CountInterrupted& e) {
    CHECK(e.partial().complete_through() == 2);
    CHECK(e.partial().rows.size() == 2);
  }
}

TEST_CASE("count_all resumes from a partial report") {
  auto fr = frame_of("paper-5");
  auto full = count_all(fr, 3);
  CountReport partial;
  partial.rows.push_back(*full.row(1));
  std::vector<unsigned> seen;
  auto resumed = count_all(fr, 3, {}, partial, [&](const CountReport& r) {
    seen.push_back(r.complete_through());
  });
  CHECK(resumed.same_counts(full));
  CHECK(seen == std::vector<unsigned>{2, 3});
}

TEST_CASE("progress hook reaches the total") {
  auto fr = frame_of("paper-5");
  std::uint64_t last_done = 0, last_total = 0;
  CountOptions o;
  o.chunk_size = 1000;
  o.progress = [&](unsigned, std::uint64_t done, std::uint64_t total) {
    last_done = done;
    last_total = total;
  };
  count_difference(fr, 2, o);
  CHECK(last_total == 25 * 25 + 25 + 1);
  CHECK(last_done == last_total);
}
