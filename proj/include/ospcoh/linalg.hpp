#pragma once

// Exact sparse linear algebra over Q.
//
// Vectors are ordered maps from an arbitrary totally ordered key to a nonzero
// Rational. Matrices use std::size_t column keys. Elimination picks the
// shortest active row and, inside it, the column with the fewest active
// entries (Markowitz-style), which keeps fill low on coboundary blocks.

#include "ospcoh/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ospcoh {

template <class Key>
using SparseVec = std::map<Key, Rational>;

/// y += a * x, pruning exact zeros.
template <class Key>
void axpy(SparseVec<Key>& y, const Rational& a, const SparseVec<Key>& x) {
  if (a.is_zero()) return;
  for (const auto& [k, v] : x) {
    auto [it, inserted] = y.try_emplace(k, a * v);
    if (!inserted) {
      it->second += a * v;
      if (it->second.is_zero()) y.erase(it);
    }
  }
}

template <class Key>
void add_term(SparseVec<Key>& y, const Key& k, const Rational& v) {
  if (v.is_zero()) return;
  auto [it, inserted] = y.try_emplace(k, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) y.erase(it);
  }
}

template <class Key>
SparseVec<Key> scaled(const SparseVec<Key>& x, const Rational& a) {
  SparseVec<Key> out;
  if (a.is_zero()) return out;
  for (const auto& [k, v] : x) out.emplace(k, v * a);
  return out;
}

template <class Key>
SparseVec<Key> operator+(SparseVec<Key> a, const SparseVec<Key>& b) {
  axpy(a, Rational(1), b);
  return a;
}

template <class Key>
SparseVec<Key> operator-(SparseVec<Key> a, const SparseVec<Key>& b) {
  axpy(a, Rational(-1), b);
  return a;
}

/// Scales so that the coefficient at the smallest key is 1.
template <class Key>
SparseVec<Key> normalized_leading_one(const SparseVec<Key>& x) {
  if (x.empty()) return x;
  return scaled(x, Rational(1) / x.begin()->second);
}

class DimensionMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Reduced row echelon basis of a subspace of the free vector space on Key.
/// Pivot of a row is its smallest key; pivot coefficients are 1 and no row has
/// a nonzero entry at another row's pivot, so equal subspaces have equal
/// bases.
template <class Key>
class Echelon {
public:
  Echelon() = default;
  explicit Echelon(const std::vector<SparseVec<Key>>& vectors) {
    for (const auto& v : vectors) insert(v);
  }

  [[nodiscard]] std::size_t dim() const { return rows_.size(); }
  [[nodiscard]] bool empty() const { return rows_.empty(); }

  /// Rows in increasing pivot order.
  [[nodiscard]] std::vector<SparseVec<Key>> basis() const {
    std::vector<SparseVec<Key>> out;
    out.reserve(rows_.size());
    for (const auto& [p, r] : rows_) out.push_back(r);
    return out;
  }

  [[nodiscard]] std::vector<Key> pivots() const {
    std::vector<Key> out;
    for (const auto& [p, r] : rows_) out.push_back(p);
    return out;
  }

  /// Remainder of v modulo the span.
  [[nodiscard]] SparseVec<Key> reduce(SparseVec<Key> v) const {
    std::vector<std::pair<const SparseVec<Key>*, Rational>> hits;
    for (const auto& [k, c] : v) {
      auto it = rows_.find(k);
      if (it != rows_.end()) hits.emplace_back(&it->second, c);
    }
    for (const auto& [row, c] : hits) axpy(v, -c, *row);
    return v;
  }

  [[nodiscard]] bool contains(const SparseVec<Key>& v) const { return reduce(v).empty(); }

  /// Adds v to the span; returns false if it was already contained.
  bool insert(const SparseVec<Key>& v) {
    SparseVec<Key> r = normalized_leading_one(reduce(v));
    if (r.empty()) return false;
    const Key pivot = r.begin()->first;
    for (auto& [p, row] : rows_) {
      auto it = row.find(pivot);
      if (it != row.end()) {
        Rational c = it->second;
        axpy(row, -c, r);
      }
    }
    rows_.emplace(pivot, std::move(r));
    return true;
  }

  friend bool operator==(const Echelon& a, const Echelon& b) { return a.rows_ == b.rows_; }

private:
  std::map<Key, SparseVec<Key>> rows_;
};

/// Sparse rational matrix, row storage with std::size_t column keys.
class SparseMatrix {
public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, Rational(1));
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_.size(); }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  void set(std::size_t r, std::size_t c, const Rational& v) {
    check(r, c);
    if (v.is_zero())
      rows_[r].erase(c);
    else
      rows_[r][c] = v;
  }
  void add(std::size_t r, std::size_t c, const Rational& v) {
    check(r, c);
    add_term(rows_[r], c, v);
  }
  [[nodiscard]] Rational at(std::size_t r, std::size_t c) const {
    check(r, c);
    auto it = rows_[r].find(c);
    return it == rows_[r].end() ? Rational(0) : it->second;
  }
  [[nodiscard]] const SparseVec<std::size_t>& row(std::size_t r) const { return rows_.at(r); }

  [[nodiscard]] std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  [[nodiscard]] SparseVec<std::size_t> column(std::size_t c) const {
    SparseVec<std::size_t> out;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      auto it = rows_[r].find(c);
      if (it != rows_[r].end()) out.emplace(r, it->second);
    }
    return out;
  }

  [[nodiscard]] SparseVec<std::size_t> multiply(const SparseVec<std::size_t>& x) const {
    SparseVec<std::size_t> out;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Rational acc;
      for (const auto& [c, v] : rows_[r]) {
        auto it = x.find(c);
        if (it != x.end()) acc += v * it->second;
      }
      if (!acc.is_zero()) out.emplace(r, acc);
    }
    return out;
  }

  [[nodiscard]] SparseMatrix multiply(const SparseMatrix& o) const {
    if (cols_ != o.rows()) throw DimensionMismatch("matrix product: inner dimensions differ");
    SparseMatrix out(rows(), o.cols());
    for (std::size_t r = 0; r < rows(); ++r)
      for (const auto& [k, v] : rows_[r])
        for (const auto& [c, w] : o.rows_[k]) out.add(r, c, v * w);
    return out;
  }

  [[nodiscard]] bool is_zero() const { return nonzeros() == 0; }

  /// Matrix-market-style coordinate dump ("rows cols nnz" then "r c value"),
  /// 1-based indices.
  [[nodiscard]] std::string to_matrix_market() const {
    std::ostringstream os;
    os << "%%MatrixMarket matrix coordinate rational general\n";
    os << rows() << ' ' << cols() << ' ' << nonzeros() << '\n';
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : rows_[r]) os << r + 1 << ' ' << c + 1 << ' ' << v << '\n';
    return os.str();
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_.size() || c >= cols_) throw std::out_of_range("SparseMatrix index out of range");
  }

  std::size_t cols_ = 0;
  std::vector<SparseVec<std::size_t>> rows_;
};

namespace detail {

/// Result of sparse forward elimination. Pivot t has row `rows[t]` whose
/// column `cols[t]` is nonzero; `rows[t]` has no entry in cols[s] for s < t.
struct Elimination {
  std::vector<SparseVec<std::size_t>> rows;
  std::vector<std::size_t> cols;
  bool inconsistent = false;  // a row reduced to only the excluded column
};

/// Eliminates the rows of `rows`. Column `excluded` (if any) is never chosen
/// as pivot; a row left with only that column marks the system inconsistent.
inline Elimination eliminate(std::vector<SparseVec<std::size_t>> rows, std::size_t ncols,
                             std::optional<std::size_t> excluded = std::nullopt) {
  Elimination out;
  const std::size_t nrows = rows.size();
  std::vector<std::set<std::size_t>> col_rows(ncols + 1);
  std::vector<bool> active(nrows, true);
  for (std::size_t r = 0; r < nrows; ++r)
    for (const auto& [c, v] : rows[r]) col_rows[c].insert(r);

  auto pivot_candidates = [&](std::size_t r) {
    std::size_t n = rows[r].size();
    if (excluded && rows[r].count(*excluded)) --n;
    return n;
  };

  for (;;) {
    std::size_t best = nrows;
    std::size_t best_len = 0;
    for (std::size_t r = 0; r < nrows; ++r) {
      if (!active[r]) continue;
      std::size_t len = pivot_candidates(r);
      if (len == 0) {
        if (!rows[r].empty()) out.inconsistent = true;
        active[r] = false;
        for (const auto& [c, v] : rows[r]) col_rows[c].erase(r);
        continue;
      }
      if (best == nrows || len < best_len) {
        best = r;
        best_len = len;
      }
    }
    if (best == nrows) break;

    std::size_t pcol = 0;
    std::size_t pcount = 0;
    bool have = false;
    for (const auto& [c, v] : rows[best]) {
      if (excluded && c == *excluded) continue;
      std::size_t cnt = col_rows[c].size();
      if (!have || cnt < pcount) {
        pcol = c;
        pcount = cnt;
        have = true;
      }
    }

    active[best] = false;
    for (const auto& [c, v] : rows[best]) col_rows[c].erase(best);
    const SparseVec<std::size_t>& prow = rows[best];
    const Rational pval = prow.at(pcol);

    std::vector<std::size_t> targets(col_rows[pcol].begin(), col_rows[pcol].end());
    for (std::size_t r : targets) {
      Rational factor = rows[r].at(pcol) / pval;
      for (const auto& [c, v] : prow) {
        auto [it, inserted] = rows[r].try_emplace(c, -factor * v);
        if (inserted) {
          col_rows[c].insert(r);
        } else {
          it->second -= factor * v;
          if (it->second.is_zero()) {
            rows[r].erase(it);
            col_rows[c].erase(r);
          }
        }
      }
    }
    out.rows.push_back(prow);
    out.cols.push_back(pcol);
  }
  return out;
}

/// Back substitution: given values for non-pivot unknowns, fills pivots.
/// `x` may carry a value at the excluded (right-hand side) column; the pivot
/// equations read row . x = 0 over all columns.
inline void back_substitute(const Elimination& e, SparseVec<std::size_t>& x) {
  for (std::size_t t = e.rows.size(); t-- > 0;) {
    const auto& row = e.rows[t];
    const std::size_t pc = e.cols[t];
    Rational acc;
    for (const auto& [c, v] : row) {
      if (c == pc) continue;
      auto it = x.find(c);
      if (it != x.end()) acc += v * it->second;
    }
    x.erase(pc);
    if (!acc.is_zero()) x.emplace(pc, -acc / row.at(pc));
  }
}

}  // namespace detail

inline std::size_t rank(const SparseMatrix& m) {
  std::vector<SparseVec<std::size_t>> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return detail::eliminate(std::move(rows), m.cols()).rows.size();
}

/// Echelon basis of the null space, each vector with leading coefficient 1.
inline std::vector<SparseVec<std::size_t>> kernel_basis(const SparseMatrix& m) {
  std::vector<SparseVec<std::size_t>> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  auto e = detail::eliminate(std::move(rows), m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.cols) is_pivot[c] = true;
  Echelon<std::size_t> ech;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    SparseVec<std::size_t> x{{j, Rational(1)}};
    detail::back_substitute(e, x);
    ech.insert(x);
  }
  return ech.basis();
}

/// Some x with m x = b, substitution-verified, or nullopt if inconsistent.
inline std::optional<SparseVec<std::size_t>> solve(const SparseMatrix& m,
                                                   const SparseVec<std::size_t>& b) {
  const std::size_t aug = m.cols();
  std::vector<SparseVec<std::size_t>> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseVec<std::size_t> row = m.row(r);
    auto it = b.find(r);
    if (it != b.end()) row.emplace(aug, -it->second);
    rows.push_back(std::move(row));
  }
  for (const auto& [r, v] : b)
    if (r >= m.rows()) throw DimensionMismatch("solve: right-hand side longer than matrix");
  auto e = detail::eliminate(std::move(rows), aug, aug);
  if (e.inconsistent) return std::nullopt;
  SparseVec<std::size_t> x{{aug, Rational(1)}};
  detail::back_substitute(e, x);
  x.erase(aug);
  if (m.multiply(x) != b) throw std::logic_error("solve: substitution check failed");
  return x;
}

// ---- subspace arithmetic over echelon bases ----

template <class Key>
Echelon<Key> subspace_sum(const Echelon<Key>& u, const Echelon<Key>& w) {
  Echelon<Key> out = u;
  for (const auto& v : w.basis()) out.insert(v);
  return out;
}

template <class Key>
bool subspace_contains(const Echelon<Key>& outer, const Echelon<Key>& inner) {
  for (const auto& v : inner.basis())
    if (!outer.contains(v)) return false;
  return true;
}

template <class Key>
Echelon<Key> subspace_intersection(const Echelon<Key>& u, const Echelon<Key>& w) {
  const auto ub = u.basis();
  const auto wb = w.basis();
  if (ub.empty() || wb.empty()) return {};
  std::map<Key, std::size_t> index;
  for (const auto* basis : {&ub, &wb})
    for (const auto& v : *basis)
      for (const auto& [k, c] : v) index.emplace(k, 0);
  std::size_t n = 0;
  for (auto& [k, i] : index) i = n++;
  SparseMatrix m(n, ub.size() + wb.size());
  for (std::size_t j = 0; j < ub.size(); ++j)
    for (const auto& [k, c] : ub[j]) m.set(index[k], j, c);
  for (std::size_t j = 0; j < wb.size(); ++j)
    for (const auto& [k, c] : wb[j]) m.set(index[k], ub.size() + j, -c);
  Echelon<Key> out;
  for (const auto& x : kernel_basis(m)) {
    SparseVec<Key> v;
    for (const auto& [j, c] : x)
      if (j < ub.size()) axpy(v, c, ub[j]);
    out.insert(v);
  }
  return out;
}

/// dim s - dim t, requiring t inside s.
template <class Key>
std::size_t subspace_quotient_dim(const Echelon<Key>& s, const Echelon<Key>& t) {
  if (!subspace_contains(s, t)) throw DimensionMismatch("quotient_dim: subspace not contained");
  return s.dim() - t.dim();
}

/// Greedy complement of s inside `inside`, scanning inside's echelon basis.
template <class Key>
Echelon<Key> subspace_complement(const Echelon<Key>& s, const Echelon<Key>& inside) {
  if (!subspace_contains(inside, s)) throw DimensionMismatch("complement: subspace not contained");
  Echelon<Key> acc = s;
  Echelon<Key> out;
  for (const auto& v : inside.basis())
    if (acc.insert(v)) out.insert(v);
  return out;
}

}  // namespace ospcoh
