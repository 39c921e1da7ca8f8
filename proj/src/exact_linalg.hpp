#pragma once

// Row reduction over an exact field (mpq_class or GaussRat). Internal helper.

#include <vector>

#include "willmore/crational.hpp"

namespace wm::detail {

inline bool isZeroExact(const mpq_class& q) { return sgn(q) == 0; }
inline bool isZeroExact(const GaussRat& q) { return q.isZero(); }

template <class T>
using ExactMatrix = std::vector<std::vector<T>>;

// Reduced row echelon form in place; returns pivot columns in row order.
template <class T>
std::vector<int> rref(ExactMatrix<T>& a, int cols) {
  std::vector<int> pivots;
  int row = 0;
  const int rows = static_cast<int>(a.size());
  for (int col = 0; col < cols && row < rows; ++col) {
    int piv = -1;
    for (int r = row; r < rows; ++r) {
      if (!isZeroExact(a[r][col])) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[row], a[piv]);
    const T inv = T(1) / a[row][col];
    for (int c = col; c < static_cast<int>(a[row].size()); ++c) a[row][c] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == row || isZeroExact(a[r][col])) continue;
      const T f = a[r][col];
      for (int c = col; c < static_cast<int>(a[r].size()); ++c) a[r][c] -= f * a[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Basis of the right nullspace; one vector per free column, with that
// column's entry set to one.
template <class T>
std::vector<std::vector<T>> nullspace(ExactMatrix<T> a, int cols) {
  const std::vector<int> pivots = rref(a, cols);
  std::vector<bool> isPivot(static_cast<size_t>(cols), false);
  for (int p : pivots) isPivot[static_cast<size_t>(p)] = true;
  std::vector<std::vector<T>> basis;
  for (int f = 0; f < cols; ++f) {
    if (isPivot[static_cast<size_t>(f)]) continue;
    std::vector<T> v(static_cast<size_t>(cols), T(0));
    v[static_cast<size_t>(f)] = T(1);
    for (size_t r = 0; r < pivots.size(); ++r) v[static_cast<size_t>(pivots[r])] = -a[r][static_cast<size_t>(f)];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solves a x = rhs. Returns false when the system is inconsistent; free
// variables are set to zero.
template <class T>
bool solveExact(ExactMatrix<T> a, const std::vector<T>& rhs, int cols, std::vector<T>& x) {
  for (size_t r = 0; r < a.size(); ++r) a[r].push_back(rhs[r]);
  const std::vector<int> pivots = rref(a, cols);
  for (size_t r = pivots.size(); r < a.size(); ++r) {
    if (!isZeroExact(a[r][static_cast<size_t>(cols)])) return false;
  }
  x.assign(static_cast<size_t>(cols), T(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[static_cast<size_t>(pivots[r])] = a[r][static_cast<size_t>(cols)];
  return true;
}

}  // namespace wm::detail
