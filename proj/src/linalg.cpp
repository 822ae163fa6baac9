#include "cybelab/linalg.hpp"

namespace cybelab {

std::vector<std::size_t> row_reduce(QMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Scalar inv = Scalar(1) / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      const Scalar f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(QMatrix m) { return row_reduce(m).size(); }

std::optional<QVector> solve_unique(const QMatrix& m, const QVector& b) {
  const std::size_t rows = m.size();
  if (rows == 0) return std::nullopt;
  const std::size_t cols = m[0].size();
  QMatrix aug = m;
  for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
  auto piv = row_reduce(aug);
  if (piv.size() != cols) return std::nullopt;
  for (std::size_t c : piv)
    if (c == cols) return std::nullopt;
  QVector x(cols, Scalar(0));
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug[i][cols];
  // rows beyond the rank must be consistent
  for (std::size_t i = piv.size(); i < rows; ++i)
    if (sgn(aug[i][cols]) != 0) return std::nullopt;
  return x;
}

std::vector<QVector> nullspace(const QMatrix& m, std::size_t columns) {
  QMatrix r = m;
  auto piv = m.empty() ? std::vector<std::size_t>{} : row_reduce(r);
  std::vector<bool> is_pivot(columns, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<QVector> out;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    QVector v(columns, Scalar(0));
    v[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r[i][free];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace cybelab
