#ifndef HESSMAP_POLY_MATRIX_HPP
#define HESSMAP_POLY_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "poly.hpp"

namespace hessmap {

template <Field F>
class PolyMatrix {
 public:
  using poly_type = MultiPoly<F>;

  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars, F field = {})
      : rows_(rows), cols_(cols), nvars_(nvars), field_(field), data_(rows * cols, poly_type(nvars, field)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nvars() const { return nvars_; }
  const F& field() const { return field_; }

  poly_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const poly_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void set(std::size_t i, std::size_t j, poly_type p) {
    if (p.nvars() != nvars_ || !(p.field() == field_)) throw variable_mismatch("PolyMatrix: entry ring mismatch");
    (*this)(i, j) = std::move(p);
  }

 private:
  std::size_t rows_, cols_, nvars_;
  F field_;
  std::vector<poly_type> data_;
};

namespace detail {

/// Laplace expansion along the first row of the submatrix on rows [row, n) and the given columns.
template <Field F>
MultiPoly<F> cofactor_det(const PolyMatrix<F>& m, std::size_t row, std::vector<std::size_t>& cols) {
  if (cols.size() == 1) return m(row, cols[0]);
  if (cols.size() == 2) return m(row, cols[0]) * m(row + 1, cols[1]) - m(row, cols[1]) * m(row + 1, cols[0]);
  MultiPoly<F> acc(m.nvars(), m.field());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const auto& entry = m(row, cols[k]);
    if (entry.is_zero()) continue;
    std::size_t c = cols[k];
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
    MultiPoly<F> minor = cofactor_det(m, row + 1, cols);
    cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
    if (minor.is_zero()) continue;
    if (k % 2 == 0)
      acc += entry * minor;
    else
      acc -= entry * minor;
  }
  return acc;
}

/// Bareiss fraction-free elimination; every division is exact.
template <Field F>
MultiPoly<F> bareiss_det(PolyMatrix<F> m) {
  std::size_t n = m.rows();
  MultiPoly<F> prev = MultiPoly<F>::constant(m.nvars(), 1, m.field());
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m(piv, k).is_zero()) ++piv;
      if (piv == n) return MultiPoly<F>(m.nvars(), m.field());
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = divide_exact(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
    prev = m(k, k);
  }
  MultiPoly<F> det = m(n - 1, n - 1);
  return negate ? -det : det;
}

}  // namespace detail

inline constexpr std::size_t kCofactorLimit = 5;

/// Exact determinant: cofactor expansion up to 5x5, Bareiss elimination above.
template <Field F>
MultiPoly<F> poly_determinant(const PolyMatrix<F>& m) {
  if (m.rows() != m.cols())
    throw dimension_mismatch("poly_determinant: matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  if (m.rows() == 0) return MultiPoly<F>::constant(m.nvars(), 1, m.field());
  if (m.rows() <= kCofactorLimit) {
    std::vector<std::size_t> cols(m.cols());
    for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
    return detail::cofactor_det(m, 0, cols);
  }
  return detail::bareiss_det(m);
}

}  // namespace hessmap

#endif  // HESSMAP_POLY_MATRIX_HPP
