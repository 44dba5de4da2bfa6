#ifndef HESSMAP_TERNARY_CUBICS_HPP
#define HESSMAP_TERNARY_CUBICS_HPP

// Plane cubics: the Hesse pencil and its Hessian dynamics, Hessians of singular cubics, the
// Aronhold invariant S (and T) by interpolation, the Aronhold map, and tangent spaces to the
// cubics with vanishing Hessian.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "binary_forms.hpp"
#include "hessian.hpp"
#include "matrix.hpp"
#include "poly.hpp"

namespace hessmap {

// ---------------------------------------------------------------------------------------------
// Hesse pencil u (x0^3 + x1^3 + x2^3) - 3 v x0 x1 x2, parameter t = v/u

namespace detail {

/// Member with u, v replaced by polynomials in a ring whose first three variables are x0..x2.
inline QPoly hesse_member_in(const QPoly& u, const QPoly& v) {
  std::size_t n = u.nvars();
  auto x0 = QPoly::variable(n, 0), x1 = QPoly::variable(n, 1), x2 = QPoly::variable(n, 2);
  return u * (x0 * x0 * x0 + x1 * x1 * x1 + x2 * x2 * x2) - v * x0 * x1 * x2 * Rational(3);
}

/// The binary forms (P, Q) of a pencil map [u:v] -> [P:Q].
struct PencilMap {
  QPoly P, Q;
  ProjParam operator()(const ProjParam& t) const {
    return {evaluate(P, {t.u(), t.v()}), evaluate(Q, {t.u(), t.v()})};
  }
};

inline PencilMap compose_pencil_map(const PencilMap& f, const PencilMap& g) {
  return {compose(f.P, {g.P, g.Q}), compose(f.Q, {g.P, g.Q})};
}

}  // namespace detail

inline QPoly hesse_member(const ProjParam& t) {
  return detail::hesse_member_in(QPoly::constant(3, t.u()), QPoly::constant(3, t.v()));
}

/// [u:v] -> [3 u v^2 : 4 u^3 - v^3], i.e. s = (4 - t^3) / (3 t^2).
inline detail::PencilMap pencil_hessian_map() {
  auto u = QPoly::variable(2, 0), v = QPoly::variable(2, 1);
  return {u * v * v * Rational(3), u * u * u * Rational(4) - v * v * v};
}

inline ProjParam pencil_hessian_param(const ProjParam& t) { return pencil_hessian_map()(t); }

/// hess(member(t)) is proportional to member(s(t)) over Q(u, v).
inline bool pencil_hessian_identity() {
  auto u = QPoly::variable(5, 3), v = QPoly::variable(5, 4);
  auto member = detail::hesse_member_in(u, v);
  auto h = hessian_determinant(member, 3);
  auto map = pencil_hessian_map();
  auto image = detail::hesse_member_in(compose(map.P, {u, v}), compose(map.Q, {u, v}));
  return !h.is_zero() && proportional_over_parameters(h, image, 3);
}

/// 4 u (u^3 - v^3): the fixed points t = infinity and t^3 = 1.
inline QPoly pencil_fixed_point_form() {
  auto m = pencil_hessian_map();
  return fixed_point_form(m.P, m.Q);
}

/// Binary cubic in (u, v) whose roots are the parameters t with s(t) = s.
inline QPoly pencil_preimage_form(const ProjParam& s) {
  auto m = pencil_hessian_map();
  return m.P * s.v() - m.Q * s.u();
}

/// Fixed-point form of the twice iterated parameter map.
inline QPoly pencil_double_fixed_point_form() {
  auto m = pencil_hessian_map();
  auto mm = detail::compose_pencil_map(m, m);
  return fixed_point_form(mm.P, mm.Q);
}

/// v^6 - 20 u^3 v^3 - 8 u^6: the harmonic members of the pencil.
inline QPoly harmonic_sextic() { return parse_poly("x1^6 - 20*x0^3*x1^3 - 8*x0^6", 2); }

/// The double fixed-point form equals u (u^3 - v^3) times the harmonic sextic up to a scalar.
inline bool harmonic_sextic_identity() {
  auto known = parse_poly("x0*(x0^3 - x1^3)", 2) * harmonic_sextic();
  return is_proportional(pencil_double_fixed_point_form(), known).has_value();
}

/// c1^2 c2^2 - 4 c0 c2^3 - 4 c1^3 c3 - 27 c0^2 c3^2 + 18 c0 c1 c2 c3 for
/// c0 x0^3 + c1 x0^2 x1 + c2 x0 x1^2 + c3 x1^3.
inline Rational binary_cubic_discriminant(const QPoly& f) {
  if (f.nvars() != 2) throw variable_mismatch("binary_cubic_discriminant: need a binary form");
  if (!f.is_zero() && f.homogeneous_degree() != 3u)
    throw std::invalid_argument("binary_cubic_discriminant: need a cubic");
  Rational c0 = f.coefficient(Monomial{3, 0}), c1 = f.coefficient(Monomial{2, 1});
  Rational c2 = f.coefficient(Monomial{1, 2}), c3 = f.coefficient(Monomial{0, 3});
  return c1 * c1 * c2 * c2 - 4 * c0 * c2 * c2 * c2 - 4 * c1 * c1 * c1 * c3 - 27 * c0 * c0 * c3 * c3 +
         18 * c0 * c1 * c2 * c3;
}

/// lambda with hess(hess(f)) = lambda f, or nullopt when not proportional.
inline std::optional<Rational> double_hessian_check(const QPoly& f) {
  if (f.nvars() != 3 || f.homogeneous_degree() != 3u)
    throw std::invalid_argument("double_hessian_check: need a ternary cubic");
  auto h = hessian(f);
  if (h.vanished) return std::nullopt;
  auto hh = hessian(h.hessian);
  if (hh.vanished) return std::nullopt;
  return is_proportional(hh.hessian, f);
}

// ---------------------------------------------------------------------------------------------
// Hessians of singular cubics

struct ClassificationCase {
  std::string name;
  QPoly cubic;
  QPoly hessian;
  bool holds = false;
};

namespace detail {

/// Lowest-degree homogeneous part of f(x0, x1, 1), as a form in x0, x1.
inline QPoly tangent_cone_at_x2(const QPoly& f) {
  auto g = compose(f, {QPoly::variable(2, 0), QPoly::variable(2, 1), QPoly::constant(2, 1)});
  if (g.is_zero()) throw std::domain_error("tangent_cone_at_x2: polynomial vanishes on x2 = 1");
  unsigned low = ~0u;
  for (const auto& [m, c] : g.terms()) low = std::min(low, m.degree());
  QPoly out(2);
  for (const auto& [m, c] : g.terms())
    if (m.degree() == low) out.add_term(m, c);
  return out;
}

inline std::vector<Rational> gradient_at(const QPoly& f, const std::vector<Rational>& p) {
  std::vector<Rational> g;
  for (std::size_t i = 0; i < f.nvars(); ++i) g.push_back(evaluate(partial_derivative(f, i), p));
  return g;
}

}  // namespace detail

/// Canonical singular cubics and the structure of their Hessians.
inline std::vector<ClassificationCase> singular_hessian_classification_suite() {
  auto P = [](const char* s) { return parse_poly(s, 3); };
  std::vector<ClassificationCase> out;
  auto add = [&](std::string name, QPoly f, auto check) {
    auto h = hessian(f).hessian;
    bool ok = !h.is_zero() && check(f, h);
    out.push_back({std::move(name), std::move(f), std::move(h), ok});
  };

  add("nodal", P("x1^2*x2 - x0^2*(x0 + x2)"), [](const QPoly& f, const QPoly& h) {
    std::vector<Rational> node = {0, 0, 1};
    for (const auto& g : {f, h}) {
      if (!is_zero(evaluate(g, node))) return false;
      for (const auto& c : detail::gradient_at(g, node))
        if (!is_zero(c)) return false;
    }
    auto cone_f = detail::tangent_cone_at_x2(f), cone_h = detail::tangent_cone_at_x2(h);
    return cone_f.homogeneous_degree() == 2u && is_proportional(cone_f, cone_h).has_value() &&
           is_proportional(cone_f, parse_poly("x1^2 - x0^2", 2)).has_value();
  });
  add("cuspidal", P("x1^2*x2 - x0^3"),
      [&](const QPoly&, const QPoly& h) { return is_proportional(h, P("x0*x1^2")).has_value(); });
  add("conic_tangent_line", P("x0*(x1^2 - x0*x2)"),
      [&](const QPoly&, const QPoly& h) { return is_proportional(h, P("x0^3")).has_value(); });
  add("conic_secant_line", P("x2*(x0*x1 - x2^2)"), [&](const QPoly&, const QPoly& h) {
    auto x2 = QPoly::variable(3, 2);
    if (order_along_subspace(h, {2}) < 1) return false;
    auto conic = divide_exact(h, x2);
    if (conic.homogeneous_degree() != 2u) return false;
    auto q = P("x0*x1 - x2^2");
    for (const std::vector<Rational>& p : {std::vector<Rational>{1, 0, 0}, std::vector<Rational>{0, 1, 0}}) {
      if (!is_zero(evaluate(conic, p))) return false;
      if (!proportional_vectors(detail::gradient_at(conic, p), detail::gradient_at(q, p))) return false;
    }
    return true;
  });
  add("trilateral", P("x0*x1*x2"),
      [&](const QPoly&, const QPoly& h) { return h == P("2*x0*x1*x2"); });
  return out;
}

// ---------------------------------------------------------------------------------------------
// Invariants of ternary cubics

/// Coefficients of a ternary cubic in the order of monomial_basis(3, 3).
inline std::vector<Rational> cubic_coefficients(const QPoly& g) {
  if (g.nvars() != 3) throw variable_mismatch("cubic_coefficients: need a ternary form");
  if (!g.is_zero() && g.homogeneous_degree() != 3u) throw std::invalid_argument("cubic_coefficients: need a cubic");
  return coefficient_vector(g, monomial_basis(3, 3));
}

inline QPoly cubic_from_coefficients(const std::vector<Rational>& a) {
  return from_coefficient_vector<RationalField>(a, monomial_basis(3, 3));
}

/// M with cubic_coefficients(g o A) = M cubic_coefficients(g).
inline QMatrix cubic_substitution_matrix(const QMatrix& A) {
  auto basis = monomial_basis(3, 3);
  QMatrix M(10, 10);
  for (std::size_t c = 0; c < basis.size(); ++c) {
    auto col = coefficient_vector(linear_substitute(QPoly::monomial(basis[c], 1), A), basis);
    for (std::size_t r = 0; r < col.size(); ++r) M(r, c) = col[r];
  }
  return M;
}

/// Integer matrix of determinant 1, a product of elementary matrices.
inline QMatrix random_unimodular(std::mt19937_64& rng, std::size_t n = 3, unsigned factors = 6) {
  auto m = QMatrix::identity(n);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (unsigned k = 0; k < factors; ++k) {
    std::size_t i = rng() % n, j = rng() % (n - 1);
    if (j >= i) ++j;
    auto e = QMatrix::identity(n);
    int c = 0;
    while (c == 0) c = entry(rng);
    e(i, j) = c;
    m = m * e;
  }
  return m;
}

/// A polynomial in the ten cubic coefficients a_0..a_9 (ordered as cubic_coefficients).
struct TernaryInvariant {
  unsigned degree = 0;
  QPoly poly{10};
  std::uint64_t seed = 0;
  unsigned witnesses = 0;

  Rational operator()(const QPoly& g) const { return evaluate(poly, cubic_coefficients(g)); }
};

class interpolation_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Monomials of degree k in the coefficients whose x-weight is (k, k, k). Invariance under the
/// diagonal matrices of determinant 1 is equivalent to lying in their span.
inline std::vector<Monomial> balanced_monomials(unsigned k) {
  auto cubic_basis = monomial_basis(3, 3);
  std::vector<Monomial> out;
  for (const auto& m : monomial_basis(10, k)) {
    unsigned w[3] = {0, 0, 0};
    for (std::size_t i = 0; i < 10; ++i)
      for (std::size_t j = 0; j < 3; ++j) w[j] += m[i] * cubic_basis[i][j];
    if (w[0] == k && w[1] == k && w[2] == k) out.push_back(m);
  }
  return out;
}

inline std::vector<QPoly> substituted_coordinates(const QMatrix& A) {
  auto M = cubic_substitution_matrix(A);
  std::vector<QPoly> out;
  for (std::size_t r = 0; r < 10; ++r) out.push_back(linear_form<RationalField>(M.row(r)));
  return out;
}

inline bool is_invariant_under(const QPoly& S, const QMatrix& A) {
  return compose(S, substituted_coordinates(A)) == S;
}

}  // namespace detail

struct InterpolationResult {
  std::uint64_t seed = 0;
  std::size_t ansatz_size = 0;
  std::vector<TernaryInvariant> basis;
};

/// Kernel of S -> S o A - S over `witnesses` random unimodular A, on the torus-invariant
/// monomials of degree k. Row reduction stops once the rank leaves `target_kernel` free columns;
/// the kernel is then checked exactly against every witness.
inline InterpolationResult interpolate_invariants(unsigned k, std::uint64_t seed, unsigned witnesses = 6,
                                                  std::size_t target_kernel = 1) {
  if (k == 0) throw std::invalid_argument("interpolate_invariants: degree must be positive");
  if (witnesses == 0) throw std::invalid_argument("interpolate_invariants: need at least one witness");
  auto cols = detail::balanced_monomials(k);
  InterpolationResult out{seed, cols.size(), {}};
  if (cols.empty()) return out;
  std::mt19937_64 rng(seed);
  std::vector<QMatrix> used;
  IncrementalEchelon<RationalField> ech(cols.size());
  for (unsigned w = 0; w < witnesses; ++w) {
    auto A = random_unimodular(rng);
    used.push_back(A);
    if (ech.rank() + target_kernel >= cols.size()) continue;
    auto L = detail::substituted_coordinates(A);
    std::map<Monomial, std::vector<Rational>, GrlexGreater> rows;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      auto image = QPoly::constant(10, 1);
      for (std::size_t i = 0; i < 10; ++i)
        for (unsigned e = 0; e < cols[c][i]; ++e) image *= L[i];
      image -= QPoly::monomial(cols[c], 1);
      for (const auto& [m, coef] : image.terms()) {
        auto [it, _] = rows.try_emplace(m, std::vector<Rational>(cols.size(), Rational(0)));
        it->second[c] = coef;
      }
    }
    for (auto& [m, row] : rows) {
      if (ech.rank() + target_kernel >= cols.size()) break;
      ech.add_row(std::move(row));
    }
  }
  for (const auto& v : ech.kernel()) {
    TernaryInvariant inv;
    inv.degree = k;
    inv.poly = projective_normalize(from_coefficient_vector<RationalField>(v, cols));
    inv.seed = seed;
    inv.witnesses = witnesses;
    for (const auto& A : used)
      if (!detail::is_invariant_under(inv.poly, A))
        throw interpolation_failure("interpolate_invariants: kernel vector is not invariant under a witness");
    out.basis.push_back(std::move(inv));
  }
  return out;
}

inline constexpr std::uint64_t kInvariantSeed = 20240501;

/// The invariants of degree 4 (S, the Aronhold invariant) and 6 (T); each space is expected to be
/// one-dimensional. Retries with the next seed when the witnesses are too special.
inline std::vector<TernaryInvariant> invariant_interpolation(unsigned k, std::uint64_t seed = kInvariantSeed,
                                                             unsigned attempts = 4) {
  if (k != 4 && k != 6) throw std::invalid_argument("invariant_interpolation: degree must be 4 or 6");
  for (unsigned a = 0; a < attempts; ++a) {
    try {
      auto r = interpolate_invariants(k, seed + a);
      if (r.basis.size() == 1) return r.basis;
    } catch (const interpolation_failure&) {
    }
  }
  throw interpolation_failure("invariant_interpolation: nullspace dimension differs from 1 for degree " +
                              std::to_string(k));
}

inline const TernaryInvariant& aronhold_invariant() {
  static const TernaryInvariant S = invariant_interpolation(4).front();
  return S;
}

// ---------------------------------------------------------------------------------------------
// The Aronhold map

namespace detail {

/// 3! / m! for the cubic monomials, pairing the coefficient space with its dual.
inline std::vector<Rational> cubic_polar_weights() {
  std::vector<Rational> w;
  for (const auto& m : monomial_basis(3, 3)) {
    long denom = 1;
    for (std::size_t i = 0; i < 3; ++i)
      for (unsigned e = 2; e <= m[i]; ++e) denom *= e;
    w.push_back(Rational(6 / denom));
  }
  return w;
}

}  // namespace detail

/// Gradient of S at g, read back as the cubic sum_m (3!/m!) dS/da_m x^m.
inline QPoly aronhold_map(const QPoly& g) {
  const auto& S = aronhold_invariant().poly;
  auto a = cubic_coefficients(g);
  auto w = detail::cubic_polar_weights();
  std::vector<Rational> grad;
  for (std::size_t i = 0; i < 10; ++i) grad.push_back(w[i] * evaluate(partial_derivative(S, i), a));
  auto out = cubic_from_coefficients(grad);
  if (out.is_zero()) throw std::domain_error("aronhold_map: gradient of S vanishes");
  return out;
}

/// [u:v] -> [3 u^2 v : 2 u^3 + v^3], i.e. t -> (2 + t^3) / (3 t).
inline detail::PencilMap aronhold_pencil_map() {
  auto u = QPoly::variable(2, 0), v = QPoly::variable(2, 1);
  return {u * u * v * Rational(3), u * u * u * Rational(2) + v * v * v};
}

inline ProjParam aronhold_pencil_action(const ProjParam& t) { return aronhold_pencil_map()(t); }

/// aronhold_map(member(t)) is proportional to member(action(t)) over Q(u, v).
inline bool aronhold_pencil_identity() {
  const auto& S = aronhold_invariant().poly;
  auto u = QPoly::variable(5, 3), v = QPoly::variable(5, 4);
  auto member = detail::hesse_member_in(u, v);
  auto basis = monomial_basis(3, 3);
  // coefficients of the member as polynomials in (u, v)
  std::vector<QPoly> coords;
  auto split = split_by_leading_variables(member, 3);
  for (const auto& m : basis) {
    Monomial key(3);
    for (std::size_t i = 0; i < 3; ++i) key.set(i, m[i]);
    auto it = split.find(key);
    coords.push_back(it == split.end() ? QPoly(5) : it->second);
  }
  auto w = detail::cubic_polar_weights();
  auto image = QPoly(5);
  for (std::size_t i = 0; i < 10; ++i) {
    auto gi = compose(partial_derivative(S, i), coords) * w[i];
    Monomial m(5);
    for (std::size_t k = 0; k < 3; ++k) m.set(k, basis[i][k]);
    image += gi * QPoly::monomial(m, 1);
  }
  auto map = aronhold_pencil_map();
  auto expected = detail::hesse_member_in(compose(map.P, {u, v}), compose(map.Q, {u, v}));
  return !image.is_zero() && proportional_over_parameters(image, expected, 3);
}

/// Matrix of second partials of S at the coefficients of g.
inline QMatrix aronhold_hessian_matrix(const QPoly& g) {
  const auto& S = aronhold_invariant().poly;
  auto a = cubic_coefficients(g);
  QMatrix m(10, 10);
  for (std::size_t i = 0; i < 10; ++i) {
    auto si = partial_derivative(S, i);
    for (std::size_t j = i; j < 10; ++j) {
      auto v = evaluate(partial_derivative(si, j), a);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

// ---------------------------------------------------------------------------------------------
// Cubics with vanishing Hessian

/// Codimension of the kernel of g' -> simultaneous_hessian(g, g') in the space of cubics.
template <Field F>
std::size_t gn_tangent_codim(const MultiPoly<F>& g) {
  if (g.nvars() != 3 || g.homogeneous_degree() != 3u)
    throw std::invalid_argument("gn_tangent_codim: need a ternary cubic");
  if (!hessian(g).vanished) throw std::domain_error("gn_tangent_codim: hessian does not vanish");
  return differential_rank(g);
}

}  // namespace hessmap

#endif  // HESSMAP_TERNARY_CUBICS_HPP
