#include "fanozeta/projective.hpp"

#include "fanozeta/errors.hpp"

namespace fanozeta {

std::uint64_t projective_size(std::uint64_t Q, unsigned dim) {
  std::uint64_t total = 0, block = 1;
  for (unsigned k = 0; k <= dim; ++k) {
    if (total > UINT64_MAX - block) throw ResourceError("projective space too large to enumerate");
    total += block;
    if (k < dim) {
      if (block > UINT64_MAX / Q) throw ResourceError("projective space too large to enumerate");
      block *= Q;
    }
  }
  return total;
}

ProjectivePoints::ProjectivePoints(FieldPtr field, unsigned dim)
    : field_(std::move(field)), dim_(dim), size_(projective_size(field_->order(), dim)) {}

std::vector<FqElem> ProjectivePoints::point(std::uint64_t index) const {
  if (index >= size_) throw InvariantError("projective point index out of range");
  const std::uint64_t Q = field_->order();
  std::vector<FqElem> pt(dim_ + 1, FqElem{0});
  // Block for lead position k holds Q^(dim-k) points.
  std::uint64_t block = 1;
  for (unsigned k = 0; k < dim_; ++k) block *= Q;
  unsigned lead = 0;
  while (index >= block) {
    index -= block;
    block /= Q;
    ++lead;
  }
  pt[lead] = FqElem{1};
  for (unsigned v = dim_; v > lead; --v) {
    pt[v] = FqElem{index % Q};
    index /= Q;
  }
  return pt;
}

}  // namespace fanozeta
