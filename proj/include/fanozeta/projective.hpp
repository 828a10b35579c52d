#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fanozeta/field.hpp"

namespace fanozeta {

/// Number of points of P^dim over a field with Q elements; ResourceError on overflow.
std::uint64_t projective_size(std::uint64_t Q, unsigned dim);

/// Canonical representatives of P^dim(F_Q): the first nonzero coordinate is 1.
/// Index order puts (1:*:...:*) first, then (0:1:*:...), ..., (0:...:0:1);
/// within a block the free coordinates count up in code order, last fastest.
class ProjectivePoints {
 public:
  ProjectivePoints(FieldPtr field, unsigned dim);

  std::uint64_t size() const { return size_; }
  std::vector<FqElem> point(std::uint64_t index) const;

  template <class Visit>
  void for_each(Visit&& visit) const {
    const std::uint64_t Q = field_->order();
    std::vector<FqElem> pt(dim_ + 1);
    for (unsigned lead = 0; lead <= dim_; ++lead) {
      for (unsigned v = 0; v <= dim_; ++v) pt[v] = FqElem{0};
      pt[lead] = FqElem{1};
      while (true) {
        visit(std::span<const FqElem>(pt));
        unsigned v = dim_ + 1;
        bool done = true;
        while (v-- > lead + 1) {
          if (++pt[v].code < Q) {
            done = false;
            break;
          }
          pt[v].code = 0;
        }
        if (done) break;
      }
    }
  }

 private:
  FieldPtr field_;
  unsigned dim_;
  std::uint64_t size_;
};

/// Same point set in log coordinates (zero is field.log_zero()); order differs.
template <class Visit>
void for_each_projective_log(const Field& field, unsigned dim, Visit&& visit) {
  const std::uint32_t zero = field.log_zero();
  std::vector<std::uint32_t> pt(dim + 1);
  for (unsigned lead = 0; lead <= dim; ++lead) {
    for (unsigned v = 0; v <= dim; ++v) pt[v] = zero;
    pt[lead] = 0;
    for (unsigned v = lead + 1; v <= dim; ++v) pt[v] = 0;
    if (lead == dim) {
      visit(std::span<const std::uint32_t>(pt));
      continue;
    }
    while (true) {
      visit(std::span<const std::uint32_t>(pt));
      unsigned v = dim + 1;
      bool done = true;
      while (v-- > lead + 1) {
        if (pt[v] < zero) {
          ++pt[v];
          done = false;
          break;
        }
        pt[v] = 0;
      }
      if (done) break;
    }
  }
}

}  // namespace fanozeta
