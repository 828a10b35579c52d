#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fanozeta/cubic.hpp"
#include "fanozeta/errors.hpp"
#include "fanozeta/projective.hpp"

namespace fanozeta {

/// Tallies of the conic-bundle walk over P^2(F_{q^r}). Only points on the
/// discriminant quintic contribute: a split point has two rational lines in
/// its residual conic (+1), a nonsplit point none (-1), a singular point one
/// double line (0).
struct CountRow {
  unsigned r = 0;
  std::int64_t difference = 0;    // D_r = N_r(C_L) - N_r(Gamma_L)
  std::int64_t gamma_points = 0;  // N_r(Gamma_L)
  std::int64_t split = 0;
  std::int64_t nonsplit = 0;
  std::int64_t singular = 0;
  /// Points where delta3 = 0 but delta1, delta2 != 0 (their classes must agree).
  std::int64_t coherence_checks = 0;
  double seconds = 0.0;

  bool same_counts(const CountRow& o) const {
    return r == o.r && difference == o.difference && gamma_points == o.gamma_points &&
           split == o.split && nonsplit == o.nonsplit && singular == o.singular &&
           coherence_checks == o.coherence_checks;
  }
};

struct CountReport {
  std::vector<CountRow> rows;  // ascending r, contiguous from 1

  const CountRow* row(unsigned r) const;
  /// Largest r such that rows 1..r are all present.
  unsigned complete_through() const;
  bool same_counts(const CountReport& o) const;
};

using ProgressHook = std::function<void(unsigned r, std::uint64_t done, std::uint64_t total)>;

struct CountOptions {
  unsigned threads = 1;
  std::uint64_t chunk_size = std::uint64_t{1} << 16;
  std::uint64_t max_points = 40'000'000'000ULL;
  /// Evaluate with field arithmetic even when log tables exist.
  bool force_plain = false;
  ProgressHook progress;
};

/// Thrown when counting stops early; carries every completed row.
class CountInterrupted : public ResourceError {
 public:
  CountInterrupted(const std::string& what, CountReport partial)
      : ResourceError(what), partial_(std::move(partial)) {}
  const CountReport& partial() const { return partial_; }

 private:
  CountReport partial_;
};

/// The Q^2 + Q + 1 canonical points of P^2(F_Q) in the documented order.
ProjectivePoints enumerate_p2(FieldPtr field);

CountRow count_difference(const LineFrame& frame, unsigned r, const CountOptions& options = {});

/// Runs count_difference for every r in 1..rmax not already present in
/// `resume`; `on_row` sees the report after each completed level.
CountReport count_all(const LineFrame& frame, unsigned rmax = 5, const CountOptions& options = {},
                      CountReport resume = {},
                      const std::function<void(const CountReport&)>& on_row = {});

}  // namespace fanozeta
