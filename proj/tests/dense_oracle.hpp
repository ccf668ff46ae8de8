#pragma once

// Textbook dense Gauss-Jordan over the rationals, used as the reference for
// the sparse routines.

#include "ospcoh/linalg.hpp"

#include <random>
#include <vector>

namespace dense {

using ospcoh::Rational;
using Matrix = std::vector<std::vector<Rational>>;

inline Matrix from_sparse(const ospcoh::SparseMatrix& m) {
  Matrix d(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) d[r][c] = v;
  return d;
}

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(Matrix& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational inv = Rational(1) / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(Matrix a) { return rref(a).size(); }

inline bool consistent(const Matrix& a, const std::vector<Rational>& b) {
  Matrix aug = a;
  for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
  return rank(aug) == rank(a);
}

inline ospcoh::SparseMatrix random_sparse(std::mt19937& rng, std::size_t rows, std::size_t cols, double density) {
  std::bernoulli_distribution fill(density);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  ospcoh::SparseMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (fill(rng)) m.set(r, c, Rational(num(rng), den(rng)));
  return m;
}

}  // namespace dense
