#include "fanozeta/linalg.hpp"

#include <utility>

#include "fanozeta/errors.hpp"

namespace fanozeta {

std::vector<std::size_t> rref(const Field& F, Matrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t sel = row;
    while (sel < rows && m[sel][col].code == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[row]);
    const FqElem inv = F.inv(m[row][col]);
    for (auto& v : m[row]) v = F.mul(v, inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || m[i][col].code == 0) continue;
      const FqElem factor = m[i][col];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = F.sub(m[i][j], F.mul(factor, m[row][j]));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(const Field& F, Matrix m) { return rref(F, m).size(); }

Matrix identity(const Field& F, std::size_t n) {
  Matrix m(n, std::vector<FqElem>(n, F.zero()));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = F.one();
  return m;
}

Matrix inverse(const Field& F, const Matrix& m) {
  const std::size_t n = m.size();
  Matrix aug(n);
  const Matrix id = identity(F, n);
  for (std::size_t i = 0; i < n; ++i) {
    aug[i] = m[i];
    aug[i].insert(aug[i].end(), id[i].begin(), id[i].end());
  }
  auto pivots = rref(F, aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw InvariantError("singular matrix");
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) out[i].assign(aug[i].begin() + static_cast<std::ptrdiff_t>(n), aug[i].end());
  return out;
}

Matrix multiply(const Field& F, const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Matrix out(n, std::vector<FqElem>(m, F.zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].code == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] = F.add(out[i][j], F.mul(a[i][l], b[l][j]));
    }
  return out;
}

}  // namespace fanozeta
