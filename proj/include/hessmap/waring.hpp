#ifndef HESSMAP_WARING_HPP
#define HESSMAP_WARING_HPP

// Forms f = sum c_i l_i^d with r+2 linear forms in r+1 variables: the closed-form Hessian,
// recovery of c from hess(f), vanishing orders of hess(f) along the subspaces l_i = l_j (= l_k)
// = 0, and the differential of the Hessian map at the standard configuration.

#include <cstddef>
#include <optional>
#include <set>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hessian.hpp"
#include "matrix.hpp"
#include "parser.hpp"
#include "poly.hpp"

namespace hessmap {

/// f = sum_i c_i l_i^d, where L holds the r+2 linear forms as rows of length r+1.
struct WaringForm {
  unsigned r = 0;
  unsigned d = 0;
  std::vector<std::vector<Rational>> L;
  std::vector<Rational> c;

  WaringForm(unsigned r_, unsigned d_, std::vector<std::vector<Rational>> L_, std::vector<Rational> c_)
      : r(r_), d(d_), L(std::move(L_)), c(std::move(c_)) {
    if (r < 1) throw std::invalid_argument("WaringForm: need r >= 1");
    if (d < 3) throw std::invalid_argument("WaringForm: need d >= 3");
    if (r + 2 > kMaxVars) throw std::invalid_argument("WaringForm: r too large");
    if (L.size() != r + 2 || c.size() != r + 2) throw dimension_mismatch("WaringForm: need r+2 forms and coefficients");
    for (const auto& row : L)
      if (row.size() != r + 1) throw dimension_mismatch("WaringForm: linear forms need r+1 coefficients");
  }

  /// l_i = x_i for i <= r and l_{r+1} = x_0 + ... + x_r.
  static WaringForm standard(unsigned r, unsigned d, std::optional<std::vector<Rational>> c = std::nullopt) {
    std::vector<std::vector<Rational>> L(r + 2, std::vector<Rational>(r + 1, Rational(0)));
    for (unsigned i = 0; i <= r; ++i) {
      L[i][i] = 1;
      L[r + 1][i] = 1;
    }
    return {r, d, std::move(L), c ? *c : std::vector<Rational>(r + 2, Rational(1))};
  }

  std::size_t nvars() const { return r + 1; }
  QPoly linear(std::size_t i) const { return linear_form<RationalField>(L.at(i)); }

  QPoly form() const {
    QPoly f(nvars());
    for (std::size_t i = 0; i < L.size(); ++i)
      if (!is_zero(c[i])) f += pow(linear(i), d) * c[i];
    return f;
  }

  /// det of L with row k removed.
  Rational complementary_minor(std::size_t k) const {
    QMatrix m(r + 1, r + 1);
    for (std::size_t i = 0, row = 0; i < L.size(); ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j <= r; ++j) m(row, j) = L[i][j];
      ++row;
    }
    return determinant(m);
  }

  /// Every r+1 of the forms are linearly independent.
  bool general_position() const {
    for (std::size_t k = 0; k < L.size(); ++k)
      if (is_zero(complementary_minor(k))) return false;
    return true;
  }
};

/// Random integer configuration with every r+1 forms independent.
inline WaringForm random_waring_form(std::mt19937_64& rng, unsigned r, unsigned d, int range = 3) {
  std::uniform_int_distribution<int> entry(-range, range);
  for (;;) {
    std::vector<std::vector<Rational>> L(r + 2, std::vector<Rational>(r + 1));
    for (auto& row : L)
      for (auto& x : row) x = entry(rng);
    std::vector<Rational> c(r + 2);
    for (auto& x : c) {
      x = 0;
      while (is_zero(x)) x = entry(rng);
    }
    WaringForm w(r, d, std::move(L), std::move(c));
    if (w.general_position()) return w;
  }
}

class zero_entry : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// G_i = prod_{j != i} c_j.
inline std::vector<Rational> g_transform(const std::vector<Rational>& c) {
  std::vector<Rational> G(c.size(), Rational(1));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j)
      if (j != i) G[i] *= c[j];
  return G;
}

/// (1/G_0, ..., 1/G_{r+1}) scaled so the first entry is 1.
inline std::vector<Rational> g_inverse(const std::vector<Rational>& G) {
  if (G.empty()) throw std::invalid_argument("g_inverse: empty vector");
  std::vector<Rational> c;
  for (const auto& g : G) {
    if (is_zero(g)) throw zero_entry("g_inverse: zero entry");
    c.push_back(G[0] / g);
  }
  return c;
}

/// Squared complementary minors. The exact Hessian is
/// (d(d-1))^(r+1) sum_i w_i G_i prod_{j != i} l_j^(d-2); w_i = 1 for the standard configuration.
inline std::vector<Rational> minor_weights(const WaringForm& w) {
  std::vector<Rational> out;
  for (std::size_t k = 0; k < w.L.size(); ++k) {
    auto m = w.complementary_minor(k);
    out.push_back(m * m);
  }
  return out;
}

/// prod_{j != i} l_j^(d-2) for i = 0..r+1.
inline std::vector<QPoly> omitted_products(const WaringForm& w) {
  std::vector<QPoly> powers;
  for (std::size_t j = 0; j < w.L.size(); ++j) powers.push_back(pow(w.linear(j), w.d - 2));
  std::vector<QPoly> out;
  for (std::size_t i = 0; i < w.L.size(); ++i) {
    auto p = QPoly::constant(w.nvars(), 1);
    for (std::size_t j = 0; j < w.L.size(); ++j)
      if (j != i) p *= powers[j];
    out.push_back(std::move(p));
  }
  return out;
}

class not_general_position : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// sum_i w_i G_i(c) prod_{j != i} l_j^(d-2).
inline QPoly closed_form_hessian(const WaringForm& w) {
  if (!w.general_position()) throw not_general_position("closed_form_hessian: forms not in general position");
  auto G = g_transform(w.c);
  auto weights = minor_weights(w);
  auto products = omitted_products(w);
  QPoly out(w.nvars());
  for (std::size_t i = 0; i < products.size(); ++i)
    if (!is_zero(G[i])) out += products[i] * (G[i] * weights[i]);
  return out;
}

/// lambda with hess(f) = lambda * closed_form_hessian(w).
inline Rational verify_prop_hessian(const WaringForm& w) {
  auto closed = closed_form_hessian(w);
  auto h = hessian(w.form()).hessian;
  if (closed.is_zero() || h.is_zero()) throw std::domain_error("verify_prop_hessian: hessian vanishes");
  auto lambda = is_proportional(h, closed);
  if (!lambda) throw not_general_position("verify_prop_hessian: hessian is not proportional to the closed form");
  return *lambda;
}

class not_in_span : public std::domain_error {
 public:
  not_in_span(const std::string& what, QPoly residual) : std::domain_error(what), residual_(std::move(residual)) {}
  const QPoly& residual() const { return residual_; }

 private:
  QPoly residual_;
};

/// c up to scalar from H = hess(sum c_i l_i^d), by expanding H in the products prod_{j != i} l_j^(d-2).
inline std::vector<Rational> recover_coefficients(const QPoly& H, const std::vector<std::vector<Rational>>& L,
                                                  unsigned d) {
  if (L.size() < 3) throw std::invalid_argument("recover_coefficients: need r+2 >= 3 linear forms");
  unsigned r = static_cast<unsigned>(L.size() - 2);
  WaringForm w(r, d, L, std::vector<Rational>(L.size(), Rational(1)));
  if (H.nvars() != w.nvars()) throw variable_mismatch("recover_coefficients: H has the wrong number of variables");
  auto products = omitted_products(w);
  auto basis = monomial_basis(w.nvars(), (r + 1) * (d - 2));
  QMatrix M(basis.size(), products.size());
  for (std::size_t i = 0; i < products.size(); ++i) {
    auto v = coefficient_vector(products[i], basis);
    for (std::size_t k = 0; k < v.size(); ++k) M(k, i) = v[k];
  }
  if (rank(M) != products.size())
    throw std::domain_error("recover_coefficients: the products are linearly dependent");
  std::vector<Rational> h;
  try {
    h = coefficient_vector(H, basis);
  } catch (const std::invalid_argument&) {
    throw not_in_span("recover_coefficients: H has the wrong degree", H);
  }
  auto sol = rank_kernel_solve(M, std::optional(h));
  if (!sol.consistent) {
    // fit on independent rows, report what is left over
    IncrementalEchelon<RationalField> ech(products.size());
    std::vector<std::size_t> rows;
    for (std::size_t k = 0; k < basis.size() && rows.size() < products.size(); ++k)
      if (ech.add_row(M.row(k))) rows.push_back(k);
    QMatrix sub(rows.size(), products.size());
    std::vector<Rational> rhs;
    for (std::size_t a = 0; a < rows.size(); ++a) {
      for (std::size_t i = 0; i < products.size(); ++i) sub(a, i) = M(rows[a], i);
      rhs.push_back(h[rows[a]]);
    }
    auto x = solve(sub, rhs);
    QPoly residual = H;
    for (std::size_t i = 0; i < products.size(); ++i) residual -= products[i] * x[i];
    throw not_in_span("recover_coefficients: H is not in the span of the products", residual);
  }
  auto weights = minor_weights(w);
  std::vector<Rational> G;
  for (std::size_t i = 0; i < products.size(); ++i) G.push_back((*sol.solution)[i] / weights[i]);
  return g_inverse(G);
}

// ---------------------------------------------------------------------------------------------
// Vanishing orders of hess(f)

struct SubspaceOrder {
  std::vector<std::size_t> indices;
  unsigned order = 0;
};

struct MultiplicityProfile {
  std::vector<SubspaceOrder> pairs;
  std::vector<SubspaceOrder> triples;  // empty for r = 2, where l_i = l_j = l_k = 0 has no points
};

namespace detail {

/// Order of f along {l_i = 0 : i in idx}: coordinates are changed so the chosen forms come first.
inline unsigned order_along_forms(const QPoly& f, const WaringForm& w, const std::vector<std::size_t>& idx) {
  std::size_t n = w.nvars();
  QMatrix M(n, n);
  IncrementalEchelon<RationalField> ech(n);
  std::size_t row = 0;
  for (auto i : idx) {
    if (!ech.add_row(w.L[i])) throw not_general_position("order_along_forms: dependent forms");
    for (std::size_t j = 0; j < n; ++j) M(row, j) = w.L[i][j];
    ++row;
  }
  for (std::size_t e = 0; e < n && row < n; ++e) {
    std::vector<Rational> unit(n, Rational(0));
    unit[e] = 1;
    if (!ech.add_row(unit)) continue;
    for (std::size_t j = 0; j < n; ++j) M(row, j) = unit[j];
    ++row;
  }
  // y = M x, so f(x) = f(M^-1 y)
  auto g = linear_substitute(f, inverse(M));
  std::set<std::size_t> S;
  for (std::size_t k = 0; k < idx.size(); ++k) S.insert(k);
  return order_along_subspace(g, S);
}

}  // namespace detail

inline MultiplicityProfile multiplicity_profile(const WaringForm& w) {
  if (!w.general_position()) throw not_general_position("multiplicity_profile: forms not in general position");
  auto h = hess(w.form());
  MultiplicityProfile out;
  std::size_t m = w.L.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      std::vector<std::size_t> idx = {i, j};
      out.pairs.push_back({idx, detail::order_along_forms(h, w, idx)});
    }
  if (w.r >= 3)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t k = j + 1; k < m; ++k) {
          std::vector<std::size_t> idx = {i, j, k};
          out.triples.push_back({idx, detail::order_along_forms(h, w, idx)});
        }
  return out;
}

// ---------------------------------------------------------------------------------------------
// The differential at the standard configuration with c = (1, ..., 1)

/// sum_{i<=r} prod_{j<=r, j != i} x_j^(d-2) g_ii
///   + sum_{i<j<=r} prod_{k not in {i,j}} l_k^(d-2) (g_ii - 2 g_ij + g_jj).
inline QPoly dh_closed_form(const QPoly& g, unsigned r, unsigned d) {
  if (g.nvars() != r + 1) throw variable_mismatch("dh_closed_form: g needs r+1 variables");
  if (!g.is_zero() && g.homogeneous_degree() != d)
    throw std::invalid_argument("dh_closed_form: g must be homogeneous of degree d");
  auto w = WaringForm::standard(r, d);
  std::vector<QPoly> powers;
  for (std::size_t j = 0; j < w.L.size(); ++j) powers.push_back(pow(w.linear(j), d - 2));
  std::vector<QPoly> gi;
  for (unsigned i = 0; i <= r; ++i) gi.push_back(partial_derivative(g, i));
  auto gij = [&](unsigned i, unsigned j) { return partial_derivative(gi[i], j); };
  QPoly out(r + 1);
  for (unsigned i = 0; i <= r; ++i) {
    auto p = QPoly::constant(r + 1, 1);
    for (unsigned j = 0; j <= r; ++j)
      if (j != i) p *= powers[j];
    out += p * gij(i, i);
  }
  for (unsigned i = 0; i <= r; ++i)
    for (unsigned j = i + 1; j <= r; ++j) {
      auto p = QPoly::constant(r + 1, 1);
      for (unsigned k = 0; k <= r + 1; ++k)
        if (k != i && k != j) p *= powers[k];
      out += p * (gij(i, i) - gij(i, j) * Rational(2) + gij(j, j));
    }
  return out;
}

struct InjectivityCertificate {
  std::size_t rank = 0;
  std::size_t expected = 0;
  bool injective() const { return rank == expected; }
};

/// Rank of g -> simultaneous_hessian(f, g) at the standard form against dim = C(d+r, r).
inline InjectivityCertificate injectivity_certificate(unsigned r, unsigned d) {
  auto f = WaringForm::standard(r, d).form();
  return {differential_rank(f), static_cast<std::size_t>(binomial(d + r, r).get_si())};
}

}  // namespace hessmap

#endif  // HESSMAP_WARING_HPP
