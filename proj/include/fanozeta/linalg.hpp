#pragma once

#include <cstddef>
#include <vector>

#include "fanozeta/field.hpp"

namespace fanozeta {

using Matrix = std::vector<std::vector<FqElem>>;

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(const Field& F, Matrix& m);
std::size_t rank(const Field& F, Matrix m);
/// Inverse of a square matrix; throws InvariantError if singular.
Matrix inverse(const Field& F, const Matrix& m);
Matrix multiply(const Field& F, const Matrix& a, const Matrix& b);
Matrix identity(const Field& F, std::size_t n);

}  // namespace fanozeta
