#ifndef HESSMAP_HESSIAN_HPP
#define HESSMAP_HESSIAN_HPP

// The Hessian map on homogeneous forms: determinants of second partials, simultaneous
// Hessians (the differential of the map), polar ranks and pencil limits.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "poly.hpp"
#include "poly_matrix.hpp"

namespace hessmap {

class vanishing_hessian : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <Field F>
struct HessianResult {
  MultiPoly<F> hessian;
  bool vanished = false;
};

/// Matrix of second partials with respect to x_0..x_{k-1}.
template <Field F>
PolyMatrix<F> second_partials(const MultiPoly<F>& f, std::size_t k) {
  if (k == 0 || k > f.nvars()) throw std::out_of_range("second_partials: bad variable block");
  PolyMatrix<F> m(k, k, f.nvars(), f.field());
  std::vector<MultiPoly<F>> first;
  for (std::size_t i = 0; i < k; ++i) first.push_back(partial_derivative(f, i));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      auto fij = partial_derivative(first[i], j);
      m(i, j) = fij;
      m(j, i) = std::move(fij);
    }
  return m;
}

/// det of the second partials in the first k variables; the remaining variables act as
/// parameters. No homogeneity checks.
template <Field F>
MultiPoly<F> hessian_determinant(const MultiPoly<F>& f, std::size_t k) {
  return poly_determinant(second_partials(f, k));
}

/// hess(f) for f homogeneous of degree d >= 2 in all of its variables.
template <Field F>
HessianResult<F> hessian(const MultiPoly<F>& f) {
  auto d = f.homogeneous_degree();
  if (!d) throw std::invalid_argument("hessian: input must be a nonzero homogeneous form");
  if (*d < 2) throw std::invalid_argument("hessian: degree must be at least 2");
  HessianResult<F> out{hessian_determinant(f, f.nvars()), false};
  out.vanished = out.hessian.is_zero();
  if (!out.vanished) {
    unsigned expected = static_cast<unsigned>(f.nvars()) * (*d - 2);
    auto got = out.hessian.homogeneous_degree();
    if (!got || *got != expected) throw std::logic_error("hessian: result has unexpected degree");
  }
  return out;
}

/// Nonvanishing hess(f); throws vanishing_hessian when hess(f) = 0.
template <Field F>
MultiPoly<F> hess(const MultiPoly<F>& f) {
  auto r = hessian(f);
  if (r.vanished) throw vanishing_hessian("hessian vanishes identically");
  return r.hessian;
}

/// Sum over k of det(Hf with row k replaced by row k of Hg), in the first `k` variables.
template <Field F>
MultiPoly<F> simultaneous_hessian_in(const MultiPoly<F>& f, const MultiPoly<F>& g, std::size_t k) {
  f.check_compatible(g);
  auto hf = second_partials(f, k);
  auto hg = second_partials(g, k);
  MultiPoly<F> acc(f.nvars(), f.field());
  for (std::size_t row = 0; row < k; ++row) {
    auto m = hf;
    for (std::size_t j = 0; j < k; ++j) m(row, j) = hg(row, j);
    acc += poly_determinant(m);
  }
  return acc;
}

/// d/dt hess(f + t g) at t = 0 for forms of equal degree.
template <Field F>
MultiPoly<F> simultaneous_hessian(const MultiPoly<F>& f, const MultiPoly<F>& g) {
  auto df = f.homogeneous_degree(), dg = g.homogeneous_degree();
  if (!df || !dg) throw std::invalid_argument("simultaneous_hessian: inputs must be nonzero homogeneous forms");
  if (*df != *dg) throw std::invalid_argument("simultaneous_hessian: degree mismatch");
  return simultaneous_hessian_in(f, g, f.nvars());
}

template <Field F>
struct DifferentialMatrix {
  FieldMatrix<F> matrix;           // rows: degree (r+1)(d-2) monomials, cols: degree d monomials
  MultiPoly<F> base;
  std::vector<Monomial> row_basis;
  std::vector<Monomial> col_basis;
};

/// Matrix of g -> simultaneous_hessian(f, g) on the monomial basis of degree-d forms.
template <Field F>
DifferentialMatrix<F> differential_matrix(const MultiPoly<F>& f) {
  auto d = f.homogeneous_degree();
  if (!d || *d < 2) throw std::invalid_argument("differential_matrix: need a nonzero form of degree >= 2");
  std::size_t n = f.nvars();
  DifferentialMatrix<F> out{FieldMatrix<F>(), f, monomial_basis(n, static_cast<unsigned>(n) * (*d - 2)),
                            monomial_basis(n, *d)};
  out.matrix = FieldMatrix<F>(out.row_basis.size(), out.col_basis.size(), f.field());
  auto hf = second_partials(f, n);
  for (std::size_t c = 0; c < out.col_basis.size(); ++c) {
    auto g = MultiPoly<F>::monomial(out.col_basis[c], f.field().one(), f.field());
    auto hg = second_partials(g, n);
    MultiPoly<F> col(n, f.field());
    for (std::size_t row = 0; row < n; ++row) {
      auto m = hf;
      for (std::size_t j = 0; j < n; ++j) m(row, j) = hg(row, j);
      col += poly_determinant(m);
    }
    auto v = coefficient_vector(col, out.row_basis);
    for (std::size_t r = 0; r < v.size(); ++r) out.matrix(r, c) = v[r];
  }
  return out;
}

template <Field F>
std::size_t differential_rank(const MultiPoly<F>& f) {
  return rank(differential_matrix(f).matrix);
}

struct ConeTest {
  bool is_cone = false;
  std::size_t polar_rank = 0;
};

/// Rank of the span of the first partials f_0..f_r; a cone exactly when the rank is <= r.
template <Field F>
ConeTest cone_test(const MultiPoly<F>& f) {
  auto d = f.homogeneous_degree();
  if (!d || *d < 1) throw std::invalid_argument("cone_test: need a nonzero form of degree >= 1");
  std::size_t n = f.nvars();
  auto basis = monomial_basis(n, *d - 1);
  FieldMatrix<F> m(n, basis.size(), f.field());
  for (std::size_t i = 0; i < n; ++i) {
    auto v = coefficient_vector(partial_derivative(f, i), basis);
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[j];
  }
  ConeTest out;
  out.polar_rank = rank(m);
  out.is_cone = out.polar_rank < n;
  return out;
}

/// sum_{i,j} u_i u_j f_ij.
template <Field F>
MultiPoly<F> second_polar(const MultiPoly<F>& f, const std::vector<typename F::value_type>& u) {
  auto d = f.homogeneous_degree();
  if (!d || *d < 2) throw std::invalid_argument("second_polar: need a nonzero form of degree >= 2");
  if (u.size() != f.nvars()) throw dimension_mismatch("second_polar: point has wrong length");
  if (std::all_of(u.begin(), u.end(), [](const auto& c) { return is_zero(c); }))
    throw std::invalid_argument("second_polar: zero point vector");
  MultiPoly<F> acc(f.nvars(), f.field());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (is_zero(u[i])) continue;
    auto fi = partial_derivative(f, i);
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (is_zero(u[j])) continue;
      acc += partial_derivative(fi, j) * (u[i] * u[j]);
    }
  }
  return acc;
}

template <Field F>
struct PencilLimit {
  unsigned order = 0;
  MultiPoly<F> leading;
};

/// Lowest nonvanishing t-coefficient of hess(alpha + t f). nullopt when hess(alpha + t f) is
/// identically zero as a polynomial in t.
template <Field F>
std::optional<PencilLimit<F>> pencil_limit_hessian(const MultiPoly<F>& alpha, const MultiPoly<F>& f) {
  alpha.check_compatible(f);
  auto da = alpha.homogeneous_degree(), df = f.homogeneous_degree();
  if (!da || !df || *da != *df) throw std::invalid_argument("pencil_limit_hessian: need forms of equal degree");
  std::size_t n = alpha.nvars();
  if (n + 1 > kMaxVars) throw std::invalid_argument("pencil_limit_hessian: too many variables");
  auto t = MultiPoly<F>::variable(n + 1, n, f.field());
  auto family = extend_variables(alpha, n + 1) + t * extend_variables(f, n + 1);
  auto h = hessian_determinant(family, n);
  if (h.is_zero()) return std::nullopt;
  unsigned order = ~0u;
  for (const auto& [m, c] : h.terms()) order = std::min(order, m[n]);
  MultiPoly<F> lead(n, f.field());
  for (const auto& [m, c] : h.terms()) {
    if (m[n] != order) continue;
    Monomial e(n);
    for (std::size_t i = 0; i < n; ++i) e.set(i, m[i]);
    lead.add_term(e, c);
  }
  return PencilLimit<F>{order, std::move(lead)};
}

}  // namespace hessmap

#endif  // HESSMAP_HESSIAN_HPP
