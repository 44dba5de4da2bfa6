#ifndef HESSMAP_MATRIX_HPP
#define HESSMAP_MATRIX_HPP

// Dense matrices over an exact field and Gauss-Jordan rank / kernel / solve.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace hessmap {

class dimension_mismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class inconsistent_system : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <Field F>
class FieldMatrix {
 public:
  using value_type = typename F::value_type;

  FieldMatrix() = default;
  FieldMatrix(std::size_t rows, std::size_t cols, F field = {})
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static FieldMatrix identity(std::size_t n, F field = {}) {
    FieldMatrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  static FieldMatrix from_rows(const std::vector<std::vector<value_type>>& rows, F field = {}) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    FieldMatrix m(rows.size(), c, field);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw dimension_mismatch("FieldMatrix: ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const F& field() const { return field_; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<value_type> row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  FieldMatrix transpose() const {
    FieldMatrix t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols_ != b.rows_) throw dimension_mismatch("FieldMatrix: product shape mismatch");
    FieldMatrix c(a.rows_, b.cols_, a.field_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (is_zero(a(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  F field_{};
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<value_type> data_;
};

/// Reduced row echelon form computed in place; returns pivot columns.
template <Field F>
std::vector<std::size_t> rref_in_place(FieldMatrix<F>& m) {
  using V = typename F::value_type;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && is_zero(m(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    V inv = m.field().one() / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      V factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <Field F>
struct RankKernelSolve {
  using value_type = typename F::value_type;
  std::size_t rank = 0;
  std::vector<std::vector<value_type>> kernel;           // basis, each of length cols
  bool consistent = true;                                // false when b was given and Mx = b has no solution
  std::optional<std::vector<value_type>> solution;       // particular solution when b given and consistent
};

/// Exact rank, kernel basis and (optionally) a particular solution of M x = b.
template <Field F>
RankKernelSolve<F> rank_kernel_solve(const FieldMatrix<F>& M,
                                     const std::optional<std::vector<typename F::value_type>>& b = std::nullopt) {
  using V = typename F::value_type;
  const F& K = M.field();
  if (b && b->size() != M.rows())
    throw dimension_mismatch("rank_kernel_solve: right-hand side has length " + std::to_string(b->size()) +
                             ", expected " + std::to_string(M.rows()));
  std::size_t n = M.cols();
  FieldMatrix<F> aug(M.rows(), n + (b ? 1 : 0), K);
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = M(i, j);
    if (b) aug(i, n) = (*b)[i];
  }
  auto pivots = rref_in_place(aug);
  RankKernelSolve<F> out;
  if (b && !pivots.empty() && pivots.back() == n) {
    out.consistent = false;
    pivots.pop_back();
  }
  out.rank = pivots.size();

  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<V> v(n, K.zero());
    v[free] = K.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -aug(r, free);
    out.kernel.push_back(std::move(v));
  }
  if (b && out.consistent) {
    std::vector<V> x(n, K.zero());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, n);
    out.solution = std::move(x);
  }
  return out;
}

template <Field F>
std::size_t rank(const FieldMatrix<F>& M) {
  FieldMatrix<F> copy = M;
  return rref_in_place(copy).size();
}

/// Solves M x = b; throws inconsistent_system when there is no solution.
template <Field F>
std::vector<typename F::value_type> solve(const FieldMatrix<F>& M, const std::vector<typename F::value_type>& b) {
  auto res = rank_kernel_solve(M, std::optional(b));
  if (!res.consistent) throw inconsistent_system("solve: system is inconsistent");
  return *res.solution;
}

template <Field F>
typename F::value_type determinant(FieldMatrix<F> m) {
  using V = typename F::value_type;
  if (m.rows() != m.cols()) throw dimension_mismatch("determinant: matrix is not square");
  const F& K = m.field();
  V det = K.one();
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::size_t piv = c;
    while (piv < m.rows() && is_zero(m(piv, c))) ++piv;
    if (piv == m.rows()) return K.zero();
    if (piv != c) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    V inv = K.one() / m(c, c);
    for (std::size_t i = c + 1; i < m.rows(); ++i) {
      if (is_zero(m(i, c))) continue;
      V factor = m(i, c) * inv;
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= factor * m(c, j);
    }
  }
  return det;
}

template <Field F>
FieldMatrix<F> inverse(const FieldMatrix<F>& m) {
  if (m.rows() != m.cols()) throw dimension_mismatch("inverse: matrix is not square");
  std::size_t n = m.rows();
  const F& K = m.field();
  FieldMatrix<F> aug(n, 2 * n, K);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = K.one();
  }
  auto piv = rref_in_place(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("inverse: matrix is singular");
  FieldMatrix<F> inv(n, n, K);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Row echelon basis grown one row at a time; used when the equations of a linear system are
/// generated lazily and most of them are redundant.
template <Field F>
class IncrementalEchelon {
 public:
  using value_type = typename F::value_type;

  IncrementalEchelon(std::size_t cols, F field = {}) : field_(field), cols_(cols) {}

  /// Reduces `row` against the current basis; keeps it if independent. Returns true when kept.
  bool add_row(std::vector<value_type> row) {
    if (row.size() != cols_) throw dimension_mismatch("IncrementalEchelon: row length mismatch");
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      std::size_t c = pivots_[k];
      if (is_zero(row[c])) continue;
      value_type factor = row[c];
      const auto& basis = rows_[k];
      for (std::size_t j = c; j < cols_; ++j)
        if (!is_zero(basis[j])) row[j] -= factor * basis[j];
    }
    std::size_t c = 0;
    while (c < cols_ && is_zero(row[c])) ++c;
    if (c == cols_) return false;
    value_type inv = field_.one() / row[c];
    for (std::size_t j = c; j < cols_; ++j) row[j] *= inv;
    // keep the basis fully reduced so kernel extraction is direct
    for (auto& other : rows_) {
      if (is_zero(other[c])) continue;
      value_type factor = other[c];
      for (std::size_t j = c; j < cols_; ++j) other[j] -= factor * row[j];
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), c) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, c);
    rows_.insert(rows_.begin() + pos, std::move(row));
    return true;
  }

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  std::vector<std::vector<value_type>> kernel() const {
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots_) is_pivot[c] = true;
    std::vector<std::vector<value_type>> out;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<value_type> v(cols_, field_.zero());
      v[free] = field_.one();
      for (std::size_t r = 0; r < rows_.size(); ++r) v[pivots_[r]] = -rows_[r][free];
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  F field_;
  std::size_t cols_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<value_type>> rows_;
};

/// Projective equality of coordinate vectors; false if either is zero.
template <class V>
bool proportional_vectors(const std::vector<V>& x, const std::vector<V>& y) {
  if (x.size() != y.size()) return false;
  std::size_t pivot = x.size();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!is_zero(x[i])) {
      pivot = i;
      break;
    }
  if (pivot == x.size() || is_zero(y[pivot])) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] * y[pivot] == y[i] * x[pivot])) return false;
  return true;
}

}  // namespace hessmap

#endif  // HESSMAP_MATRIX_HPP
