#pragma once

#include <cstdint>
#include <vector>

#include "fanozeta/cubic.hpp"

namespace fanozeta {

// Brute-force reference counts for small fields. Nothing here goes through
// the line frame or the discriminant quintic.

inline constexpr std::uint64_t kOraclePointBudget = 2'000'000'000ULL;

/// N_r(F): zeros of F among the canonical points of P^4(F_{q^r}).
std::uint64_t count_hypersurface_p4(const CubicForm& F, unsigned r,
                                    std::uint64_t budget = kOraclePointBudget);

/// A line lies on F iff F vanishes at four distinct points of it.
bool contains_line_by_points(const CubicForm& F, const Line& L);

/// Every F_q-rational line on F, in enumeration order. Size is N_1(S).
std::vector<Line> lines_on_cubic(const CubicForm& F, std::uint64_t budget = 50'000'000);

bool lines_meet(const Line& a, const Line& b);

struct IncidenceCounts {
  std::uint64_t gamma_points = 0;     // planes through L whose residual conic is degenerate
  std::uint64_t lines_meeting = 0;    // lines L' != L on F with L' meeting L
  std::uint64_t residual_contains_l = 0;  // planes whose residual conic contains L itself
  std::uint64_t curve_points = 0;     // naive N_1(C_L)
  std::int64_t difference = 0;        // curve_points - gamma_points

  friend bool operator==(const IncidenceCounts&, const IncidenceCounts&) = default;
};

/// Walks the planes through L (parametrized independently of the line frame)
/// and tests each residual conic's determinant; pairs this with the naive
/// count of lines meeting L. Pass `lines` to reuse an enumeration.
IncidenceCounts incidence_counts(const CubicForm& F, const Line& L,
                                 const std::vector<Line>* lines = nullptr);

}  // namespace fanozeta
