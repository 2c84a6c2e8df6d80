// Fraction-free exact linear algebra: rank, incremental span, small solves.
#pragma once

#include "m06cox/numeric.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace m06cox {

using IntRow = std::vector<Int>;
using IntMat = std::vector<IntRow>;
using RatRow = std::vector<Rat>;

/// Divide a row by the gcd of its entries (keeps elimination entries small).
inline void reduce_row_content(IntRow& row) {
  Int g = 0;
  for (const Int& v : row) {
    g = int_gcd(g, v);
    if (g == 1) return;
  }
  if (g == 0 || g == 1) return;
  for (Int& v : row) v /= g;
}

/// Rank over Q of an integer matrix, by division-minimizing row elimination.
/// Rows are combined as a*r - b*p and re-reduced by their content, so all
/// intermediate values stay integral.
inline long rank_int(IntMat m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  long rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    // pick the pivot with smallest nonzero magnitude in this column
    std::size_t piv = m.size();
    for (std::size_t r = row; r < m.size(); ++r) {
      if (m[r][col] == 0) continue;
      if (piv == m.size() || int_abs(m[r][col]) < int_abs(m[piv][col])) piv = r;
    }
    if (piv == m.size()) continue;
    std::swap(m[row], m[piv]);
    const Int a = m[row][col];
    for (std::size_t r = row + 1; r < m.size(); ++r) {
      if (m[r][col] == 0) continue;
      const Int b = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] = a * m[r][c] - b * m[row][c];
      reduce_row_content(m[r]);
    }
    ++row;
    ++rank;
  }
  return rank;
}

/// Incremental row space: insert rows one at a time, tracking rank.
class IntSpan {
 public:
  explicit IntSpan(std::size_t cols) : cols_(cols) {}

  long rank() const { return static_cast<long>(rows_.size()); }

  /// Reduces `row` against the stored echelon rows; returns true if it
  /// enlarged the span.
  bool insert(IntRow row) {
    if (row.size() != cols_) throw std::invalid_argument("IntSpan: column mismatch");
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t p = pivots_[k];
      if (row[p] == 0) continue;
      const Int a = rows_[k][p];
      const Int b = row[p];
      for (std::size_t c = 0; c < cols_; ++c) row[c] = a * row[c] - b * rows_[k][c];
      reduce_row_content(row);
    }
    std::size_t piv = cols_;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (row[c] != 0) { piv = c; break; }
    }
    if (piv == cols_) return false;
    rows_.push_back(std::move(row));
    pivots_.push_back(piv);
    return true;
  }

 private:
  std::size_t cols_;
  IntMat rows_;
  std::vector<std::size_t> pivots_;
};

/// Kernel of an integer matrix (columns = unknowns), as rational vectors.
inline std::vector<RatRow> kernel_int(const IntMat& m, std::size_t cols) {
  // rational row reduction; sizes here are tiny (<= a few dozen columns)
  std::vector<RatRow> a;
  a.reserve(m.size());
  for (const IntRow& r : m) {
    RatRow rr(cols);
    for (std::size_t c = 0; c < cols; ++c) rr[c] = Rat(r[c]);
    a.push_back(std::move(rr));
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t piv = a.size();
    for (std::size_t r = row; r < a.size(); ++r)
      if (a[r][col] != 0) { piv = r; break; }
    if (piv == a.size()) continue;
    std::swap(a[row], a[piv]);
    const Rat d = a[row][col];
    for (std::size_t c = col; c < cols; ++c) a[row][c] /= d;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rat f = a[r][col];
      for (std::size_t c = col; c < cols; ++c) a[r][c] -= f * a[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::vector<RatRow> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RatRow v(cols, Rat(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = -a[k][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solve t = x*u + y*v exactly; nullopt if inconsistent.
inline std::optional<std::pair<Rat, Rat>> solve_pencil(const RatRow& u, const RatRow& v,
                                                       const RatRow& t) {
  const std::size_t n = u.size();
  if (v.size() != n || t.size() != n) throw std::invalid_argument("solve_pencil: size mismatch");
  // find two coordinates where (u,v) has rank 2
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Rat det = u[i] * v[j] - u[j] * v[i];
      if (det == 0) continue;
      const Rat x = (t[i] * v[j] - t[j] * v[i]) / det;
      const Rat y = (u[i] * t[j] - u[j] * t[i]) / det;
      for (std::size_t c = 0; c < n; ++c) {
        if (x * u[c] + y * v[c] != t[c]) return std::nullopt;
      }
      return std::make_pair(x, y);
    }
  }
  return std::nullopt;
}

}  // namespace m06cox
