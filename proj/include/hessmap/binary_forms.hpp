#ifndef HESSMAP_BINARY_FORMS_HPP
#define HESSMAP_BINARY_FORMS_HPP

// The Hessian map on binary forms h_{d,1}: a-coordinates, the Hankel cone structure, the
// coefficients Q_p of hess(f) and their Jacobian, chord and tangent images, the special
// fibres, and the quartic (d = 4) apparatus.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hessian.hpp"
#include "matrix.hpp"
#include "parser.hpp"
#include "poly.hpp"

namespace hessmap {

/// Point [u:v] of P^1. As a parameter it stands for t = v/u, so [1:0] is t = 0 and [0:1] is
/// infinity.
class ProjParam {
 public:
  ProjParam(Rational u, Rational v) : u_(std::move(u)), v_(std::move(v)) {
    if (is_zero(u_) && is_zero(v_)) throw std::invalid_argument("ProjParam: [0:0] is not a point");
  }
  static ProjParam affine(const Rational& t) { return {1, t}; }
  static ProjParam infinity() { return {0, 1}; }

  /// "u,v" or a single rational t.
  static ProjParam parse(std::string_view text) {
    auto v = parse_rational_list(text);
    if (v.size() == 1) return affine(v[0]);
    if (v.size() != 2) throw std::invalid_argument("ProjParam: expected \"u,v\" or \"t\"");
    return {v[0], v[1]};
  }

  const Rational& u() const { return u_; }
  const Rational& v() const { return v_; }
  bool is_infinity() const { return is_zero(u_); }
  std::optional<Rational> value() const {
    if (is_infinity()) return std::nullopt;
    return v_ / u_;
  }
  ProjParam normalized() const { return is_infinity() ? infinity() : affine(v_ / u_); }
  std::string str() const {
    auto n = normalized();
    return n.u_.get_str() + "," + n.v_.get_str();
  }

  friend bool operator==(const ProjParam& a, const ProjParam& b) { return a.u_ * b.v_ == a.v_ * b.u_; }

 private:
  Rational u_, v_;
};

/// f = sum_i a_i C(d, i) x0^(d-i) x1^i.
struct BinaryACoords {
  unsigned d = 0;
  std::vector<Rational> a;

  BinaryACoords() = default;
  explicit BinaryACoords(std::vector<Rational> coords) : a(std::move(coords)) {
    if (a.empty()) throw std::invalid_argument("BinaryACoords: need at least one coordinate");
    d = static_cast<unsigned>(a.size() - 1);
  }

  static BinaryACoords from_poly(const QPoly& f) {
    if (f.nvars() != 2) throw variable_mismatch("BinaryACoords: need a binary form");
    auto deg = f.homogeneous_degree();
    if (!deg) throw std::invalid_argument("BinaryACoords: need a nonzero homogeneous form");
    std::vector<Rational> a(*deg + 1);
    for (unsigned i = 0; i <= *deg; ++i)
      a[i] = f.coefficient(Monomial{*deg - i, i}) / Rational(binomial(*deg, i));
    return BinaryACoords(std::move(a));
  }

  /// The monomial x0^(d-k) x1^k.
  static BinaryACoords monomial(unsigned d, unsigned k) {
    if (k > d) throw std::out_of_range("BinaryACoords::monomial: k > d");
    std::vector<Rational> a(d + 1, Rational(0));
    a[k] = Rational(1) / Rational(binomial(d, k));
    return BinaryACoords(std::move(a));
  }

  QPoly to_poly() const {
    QPoly f(2);
    for (unsigned i = 0; i <= d; ++i) f.add_term(Monomial{d - i, i}, a[i] * Rational(binomial(d, i)));
    return f;
  }

  bool is_zero_vector() const {
    return std::all_of(a.begin(), a.end(), [](const Rational& c) { return is_zero(c); });
  }
};

// ---------------------------------------------------------------------------------------------
// Hankel cone structure

inline QMatrix hankel_matrix(const BinaryACoords& f) {
  if (f.d < 1) throw std::invalid_argument("hankel_matrix: need d >= 1");
  QMatrix m(2, f.d);
  for (unsigned j = 0; j < f.d; ++j) {
    m(0, j) = f.a[j];
    m(1, j) = f.a[j + 1];
  }
  return m;
}

inline bool is_cone_point(const BinaryACoords& f) { return rank(hankel_matrix(f)) < 2; }

// ---------------------------------------------------------------------------------------------
// Coefficients Q_p of hess(f) and their Jacobian

/// Q_0..Q_{2d-4} over any commutative ring element type T (rationals, or polynomials in the a_i).
template <class T>
std::vector<T> qp_values(const std::vector<T>& a, const T& zero) {
  if (a.size() < 4) throw std::invalid_argument("qp_coefficients: need d >= 3");
  long d = static_cast<long>(a.size()) - 1;
  auto at = [&](long i) -> const T& { return i < 0 || i > d ? zero : a[static_cast<std::size_t>(i)]; };
  std::vector<T> q;
  for (long p = 0; p <= 2 * d - 4; ++p) {
    T acc = zero;
    for (long i = 0; i <= p; ++i) {
      Integer c = binomial(d - 2, i) * binomial(d - 2, p - i);
      if (c == 0) continue;
      acc = acc + (at(i) * at(p - i + 2) - at(i + 1) * at(p - i + 1)) * Rational(c);
    }
    q.push_back(std::move(acc));
  }
  return q;
}

/// hess(f) = d^2 (d-1)^2 sum_p Q_p x0^(2d-4-p) x1^p.
inline std::vector<Rational> qp_coefficients(const BinaryACoords& f) {
  if (f.d < 3) throw std::invalid_argument("qp_coefficients: need d >= 3");
  return qp_values(f.a, Rational(0));
}

inline Rational qp_scale(unsigned d) { return Rational(d * d * (d - 1) * (d - 1)); }

/// The Q_p as polynomials in the a-variables a_0..a_d (variable i of a (d+1)-variable ring).
inline std::vector<QPoly> qp_symbolic(unsigned d) {
  if (d + 1 > kMaxVars) throw std::invalid_argument("qp_symbolic: degree too large");
  std::vector<QPoly> a;
  for (unsigned i = 0; i <= d; ++i) a.push_back(QPoly::variable(d + 1, i));
  return qp_values(a, QPoly(d + 1));
}

/// Bracket coefficient of the (p, q) Jacobian entry: dQ_p/da_q = entry * a_{p-q+2}.
inline Rational jacobian_entry(long p, long q, unsigned d) {
  long dd = static_cast<long>(d);
  if (d < 3 || p < 0 || p > 2 * dd - 4 || q < 0 || q > dd) throw std::out_of_range("jacobian_entry: index out of range");
  auto C = [&](long k) { return binomial(dd - 2, k); };
  return Rational(C(q) * C(p - q) + C(q - 2) * C(p - q + 2) - 2 * C(q - 1) * C(p - q + 1));
}

inline QMatrix jacobian_matrix(const BinaryACoords& f) {
  unsigned d = f.d;
  if (d < 3) throw std::invalid_argument("jacobian_matrix: need d >= 3");
  QMatrix m(2 * d - 3, d + 1);
  for (long p = 0; p <= 2 * static_cast<long>(d) - 4; ++p)
    for (long q = 0; q <= static_cast<long>(d); ++q) {
      long idx = p - q + 2;
      if (idx < 0 || idx > static_cast<long>(d)) continue;
      m(static_cast<std::size_t>(p), static_cast<std::size_t>(q)) = jacobian_entry(p, q, d) * f.a[static_cast<std::size_t>(idx)];
    }
  return m;
}

/// C(d-2,k+1) C(d-2,k-1) - C(d-2,k)^2: coefficient of a_{k+1}^2 in Q_{2k}.
inline Integer cascade_coefficient(unsigned d, long k) {
  long n = static_cast<long>(d) - 2;
  return binomial(n, k + 1) * binomial(n, k - 1) - binomial(n, k) * binomial(n, k);
}

// ---------------------------------------------------------------------------------------------
// Chords and tangents of the rational normal curve

/// Linear form vanishing at the point x = [x0:x1] of P^1.
inline QPoly vanishing_form(const ProjParam& x) {
  QPoly l(2);
  l.add_term(Monomial{1, 0}, x.v());
  l.add_term(Monomial{0, 1}, -x.u());
  return l;
}

/// (alpha beta)^(d-2): hessian image of the chord through alpha^d and beta^d.
inline QPoly chord_image(const ProjParam& x, const ProjParam& y, unsigned d) {
  if (d < 3) throw std::invalid_argument("chord_image: need d >= 3");
  return projective_normalize(pow(vanishing_form(x) * vanishing_form(y), d - 2));
}

inline QPoly tangent_image(const ProjParam& x, unsigned d) {
  if (d < 3) throw std::invalid_argument("tangent_image: need d >= 3");
  return projective_normalize(pow(vanishing_form(x), 2 * (d - 2)));
}

// ---------------------------------------------------------------------------------------------
// Special fibres

struct FiberStep {
  unsigned p = 0;          // index of the equation Q_p used
  Rational coefficient;    // coefficient of its single surviving monomial
  std::vector<unsigned> variables;  // a-indices in that monomial
};

struct SpecialFiberReport {
  unsigned d = 0;
  unsigned target = 0;               // fibre of x0^(d-target) x1^target
  bool unique = false;
  bool curve_branch_ok = false;      // a_0 != 0 forces a_i = t^i
  std::vector<unsigned> fiber_points;  // a-indices k with e_k in the fibre
  std::vector<FiberStep> forced;     // steps that forced a single variable to vanish
  std::size_t jacobian_rank = 0;
  std::vector<std::string> trace;
};

namespace detail {

inline QPoly zero_variable(const QPoly& f, std::size_t i) {
  QPoly out(f.nvars());
  for (const auto& [m, c] : f.terms())
    if (m[i] == 0) out.add_term(m, c);
  return out;
}

inline std::string a_text(const QPoly& f) {
  std::string s = print_poly(f);
  std::replace(s.begin(), s.end(), 'x', 'a');
  return s;
}

inline std::string t_text(const QPoly& f) {
  std::string s = print_poly(f);
  for (auto pos = s.find("x0"); pos != std::string::npos; pos = s.find("x0")) s.replace(pos, 2, "t");
  return s;
}

}  // namespace detail

/// Replays the elimination showing that the fibre of h_{d,1} through x0^(d-k) x1^k is that
/// single point. Default target k = d-2, or k = 5 for d = 8.
inline SpecialFiberReport special_fiber_verify(unsigned d, std::optional<unsigned> target = std::nullopt) {
  if (d <= 4) throw std::invalid_argument("special_fiber_verify: fibres are not finite single points for d <= 4");
  if (d + 1 > kMaxVars) throw std::invalid_argument("special_fiber_verify: degree too large");
  SpecialFiberReport rep;
  rep.d = d;
  rep.target = target.value_or(d == 8 ? 5 : d - 2);
  unsigned k = rep.target;
  if (k < 2 || k > d - 2) throw std::invalid_argument("special_fiber_verify: target must satisfy 2 <= k <= d-2");
  unsigned excluded = 2 * k - 2;  // hess(x0^(d-k) x1^k) is a multiple of x0^(2d-2-2k) x1^(2k-2)
  rep.trace.push_back("target x0^" + std::to_string(d - k) + "*x1^" + std::to_string(k) + ": equations Q_p = 0 for p != " +
                      std::to_string(excluded));

  // a_0 != 0: normalise a_0 = 1, a_1 = t and solve Q_0..Q_{d-2} for a_2..a_d
  {
    auto t = QPoly::variable(1, 0);
    std::vector<QPoly> a(d + 1, QPoly(1));
    a[0] = QPoly::constant(1, 1);
    a[1] = t;
    rep.curve_branch_ok = true;
    for (unsigned p = 0; p + 2 <= d; ++p) {
      auto q = qp_values(a, QPoly(1))[p];
      Rational lead(binomial(d - 2, p));
      a[p + 2] = q * (Rational(-1) / lead);
      bool ok = a[p + 2] == pow(t, p + 2);
      rep.curve_branch_ok = rep.curve_branch_ok && ok;
      rep.trace.push_back("a0 = 1, a1 = t: Q_" + std::to_string(p) + " is linear in a" + std::to_string(p + 2) +
                          " with coefficient " + lead.get_str() + ", so a" + std::to_string(p + 2) + " = " +
                          detail::t_text(a[p + 2]) + (ok ? "" : " (not t^i)"));
    }
    rep.trace.push_back(rep.curve_branch_ok ? "a0 != 0 forces a point of the rational normal curve, whose hessian vanishes"
                                            : "a0 != 0 branch did not reduce to the rational normal curve");
  }

  // a_0 = 0: case analysis on equations with a single surviving monomial
  auto all = qp_symbolic(d);
  std::vector<std::pair<unsigned, QPoly>> eqs;
  for (unsigned p = 0; p < all.size(); ++p)
    if (p != excluded) eqs.emplace_back(p, detail::zero_variable(all[p], 0));
  bool clean = true;
  std::set<unsigned> points;

  std::function<void(std::vector<bool>, std::vector<std::pair<unsigned, QPoly>>, int)> branch;
  branch = [&](std::vector<bool> zero, std::vector<std::pair<unsigned, QPoly>> system, int depth) {
    std::string indent(static_cast<std::size_t>(2 * depth), ' ');
    std::vector<std::pair<unsigned, QPoly>> live;
    for (auto& [p, e] : system) {
      for (unsigned i = 0; i <= d; ++i)
        if (zero[i]) e = detail::zero_variable(e, i);
      if (!e.is_zero()) live.emplace_back(p, std::move(e));
    }
    for (const auto& [p, e] : live) {
      if (e.size() != 1) continue;
      const auto& [m, c] = *e.terms().begin();
      std::vector<unsigned> vars;
      for (unsigned i = 0; i <= d; ++i)
        if (m[i]) vars.push_back(i);
      if (vars.size() == 1) {
        rep.forced.push_back({p, c, vars});
        rep.trace.push_back(indent + "Q_" + std::to_string(p) + " = " + detail::a_text(e) + " forces a" +
                            std::to_string(vars[0]) + " = 0");
        zero[vars[0]] = true;
        branch(zero, live, depth);
        return;
      }
      std::string alts;
      for (auto i : vars) alts += (alts.empty() ? "a" : " or a") + std::to_string(i) + " = 0";
      rep.trace.push_back(indent + "Q_" + std::to_string(p) + " = " + detail::a_text(e) + " splits: " + alts);
      for (auto i : vars) {
        auto z = zero;
        z[i] = true;
        rep.trace.push_back(indent + "case a" + std::to_string(i) + " = 0");
        branch(z, live, depth + 1);
      }
      return;
    }
    std::vector<unsigned> free;
    for (unsigned i = 1; i <= d; ++i)
      if (!zero[i]) free.push_back(i);
    if (!live.empty()) {
      clean = false;
      rep.trace.push_back(indent + "unresolved: " + std::to_string(live.size()) + " equations with several terms remain");
      return;
    }
    if (free.empty()) {
      rep.trace.push_back(indent + "only the zero vector remains");
      return;
    }
    if (free.size() > 1) {
      clean = false;
      rep.trace.push_back(indent + "a family of dimension " + std::to_string(free.size()) + " survives");
      return;
    }
    unsigned j = free[0];
    auto e = BinaryACoords::monomial(d, j);
    bool vanishing = is_zero(qp_coefficients(e)[excluded]);
    if (vanishing) {
      rep.trace.push_back(indent + "only a" + std::to_string(j) + " != 0: x0^" + std::to_string(d - j) + "*x1^" +
                          std::to_string(j) + " has vanishing hessian, excluded");
    } else {
      points.insert(j);
      rep.trace.push_back(indent + "only a" + std::to_string(j) + " != 0: the point x0^" + std::to_string(d - j) + "*x1^" +
                          std::to_string(j));
    }
  };
  std::vector<bool> zero(d + 1, false);
  zero[0] = true;
  rep.trace.push_back("case a0 = 0");
  branch(zero, eqs, 1);

  rep.fiber_points.assign(points.begin(), points.end());
  rep.jacobian_rank = rank(jacobian_matrix(BinaryACoords::monomial(d, k)));
  rep.trace.push_back("jacobian rank at the target: " + std::to_string(rep.jacobian_rank) + " of " + std::to_string(d + 1));
  rep.unique = rep.curve_branch_ok && clean && rep.fiber_points == std::vector<unsigned>{k};
  return rep;
}

// ---------------------------------------------------------------------------------------------
// Quadrics through the rational normal curve and its tangent developable

struct QuadricDims {
  std::size_t through_curve = 0;
  std::size_t through_tangents = 0;
  std::size_t difference = 0;
};

inline QuadricDims quadric_space_dims(unsigned d) {
  if (d < 3) throw std::invalid_argument("quadric_space_dims: need d >= 3");
  if (d + 1 > kMaxVars) throw std::invalid_argument("quadric_space_dims: degree too large");
  auto basis = monomial_basis(d + 1, 2);
  auto row_at = [&](const std::vector<Rational>& pt) {
    std::vector<Rational> row;
    for (const auto& m : basis) {
      Rational v = 1;
      for (unsigned i = 0; i <= d; ++i)
        for (unsigned e = 0; e < m[i]; ++e) v *= pt[i];
      row.push_back(v);
    }
    return row;
  };
  // a quadric restricted to a_i = t^i + s i t^(i-1) has degree <= 2d in t and <= 2 in s
  unsigned nt = 2 * d + 3;
  IncrementalEchelon<RationalField> curve(basis.size()), tangents(basis.size());
  for (unsigned k = 0; k < nt; ++k) {
    Rational t = Rational(static_cast<long>(k)) - Rational(static_cast<long>(d + 1));
    for (long s = 0; s <= 3; ++s) {
      std::vector<Rational> pt(d + 1);
      for (unsigned i = 0; i <= d; ++i) {
        Rational ti = 1, ti1 = 1;
        for (unsigned e = 0; e < i; ++e) ti *= t;
        for (unsigned e = 0; e + 1 < i; ++e) ti1 *= t;
        pt[i] = ti + (i ? Rational(s * static_cast<long>(i)) * ti1 : Rational(0));
      }
      auto row = row_at(pt);
      if (s == 0) curve.add_row(row);
      tangents.add_row(std::move(row));
    }
  }
  QuadricDims out;
  out.through_curve = basis.size() - curve.rank();
  out.through_tangents = basis.size() - tangents.rank();
  out.difference = out.through_curve - out.through_tangents;
  return out;
}

// ---------------------------------------------------------------------------------------------
// Reducedness of the hessian divisor

/// True when hess(f) has no repeated factor. Uses gcd(h, d/dx0 h); a simple root at [1:0]
/// divides d/dx0 h by Euler's identity and is removed before deciding.
inline bool hessian_squarefree(const BinaryACoords& f) {
  auto h = hessian(f.to_poly());
  if (h.vanished) throw vanishing_hessian("hessian_squarefree: hessian vanishes");
  auto g = gcd_binary_form(h.hessian, partial_derivative(h.hessian, 0));
  auto x1 = QPoly::variable(2, 1);
  bool x1_simple = order_along_subspace(h.hessian, {1}) == 1;
  if (x1_simple) g = projective_normalize(divide_exact(g, x1));
  return g.total_degree() == 0;
}

// ---------------------------------------------------------------------------------------------
// Quartics

/// (Q12, Q13, Q14, Q23, Q24, Q34): 2x2 minors of the 2x4 Hankel matrix, Q_ij on columns i, j.
template <class T>
std::vector<T> quartic_minors(const std::vector<T>& a) {
  if (a.size() != 5) throw std::invalid_argument("quartic_qij: need d = 4");
  std::vector<T> q;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) q.push_back(a[i - 1] * a[j] - a[j - 1] * a[i]);
  return q;
}

inline std::vector<Rational> quartic_qij(const BinaryACoords& f) { return quartic_minors(f.a); }

inline std::vector<Rational> mu_map(const BinaryACoords& f) {
  if (f.d != 4) throw std::invalid_argument("mu_map: need d = 4");
  if (f.is_zero_vector()) throw std::invalid_argument("mu_map: zero form");
  return quartic_minors(f.a);
}

inline Rational plucker_quadric(const std::vector<Rational>& x) {
  return x[0] * x[5] - x[1] * x[4] + x[2] * x[3];
}

/// Q12 x0^4 + 2 Q13 x0^3 x1 + (Q14 + 3 Q23) x0^2 x1^2 + 2 Q24 x0 x1^3 + Q34 x1^4.
inline QPoly quartic_hessian_from_minors(const std::vector<Rational>& q) {
  QPoly h(2);
  h.add_term(Monomial{4, 0}, q[0]);
  h.add_term(Monomial{3, 1}, 2 * q[1]);
  h.add_term(Monomial{2, 2}, q[2] + 3 * q[3]);
  h.add_term(Monomial{1, 3}, 2 * q[4]);
  h.add_term(Monomial{0, 4}, q[5]);
  return h;
}

/// hess(f) equals 144 times the minor expansion.
inline bool quartic_hessian_identity(const BinaryACoords& f) {
  if (f.is_zero_vector()) throw std::invalid_argument("quartic_hessian_identity: zero form");
  auto h = hessian(f.to_poly()).hessian;
  return h == quartic_hessian_from_minors(quartic_qij(f)) * qp_scale(4);
}

struct QuarticInvariants {
  Rational i, j;
  std::optional<ProjParam> J;  // [3^6 4^3 j^2 : i^3]; undefined when i = j = 0
  bool harmonic() const { return is_zero(j) && !is_zero(i); }
  bool anharmonic() const { return is_zero(i) && !is_zero(j); }
};

template <class T>
T quartic_i(const std::vector<T>& a) {
  return a[0] * a[4] - a[1] * a[3] * Rational(4) + a[2] * a[2] * Rational(3);
}

template <class T>
T quartic_j(const std::vector<T>& a) {
  return a[0] * (a[2] * a[4] - a[3] * a[3]) - a[1] * (a[1] * a[4] - a[2] * a[3]) + a[2] * (a[1] * a[3] - a[2] * a[2]);
}

inline QuarticInvariants quartic_invariants(const BinaryACoords& f) {
  if (f.d != 4) throw std::invalid_argument("quartic_invariants: need d = 4");
  QuarticInvariants inv{quartic_i(f.a), quartic_j(f.a), std::nullopt};
  Rational u = Rational(729 * 64) * inv.j * inv.j, v = inv.i * inv.i * inv.i;
  if (!is_zero(u) || !is_zero(v)) inv.J = ProjParam(u, v);
  return inv;
}

/// The a-variables a_0..a_4 of a 5-variable ring.
inline std::vector<QPoly> quartic_a_variables() {
  std::vector<QPoly> a;
  for (unsigned i = 0; i < 5; ++i) a.push_back(QPoly::variable(5, i));
  return a;
}

/// dj/da_k = (Q34, -2 Q24, Q14 + 3 Q23, -2 Q13, Q12)_k as polynomial identities, together with
/// a0 a4 + 2 a1 a3 - 3 a2^2 = Q14 + 3 Q23.
inline bool quartic_polar_identities() {
  auto a = quartic_a_variables();
  auto q = quartic_minors(a);
  auto j = quartic_j(a);
  std::vector<QPoly> expected = {q[5], q[4] * Rational(-2), q[2] + q[3] * Rational(3), q[1] * Rational(-2), q[0]};
  for (unsigned k = 0; k < 5; ++k)
    if (!(partial_derivative(j, k) == expected[k])) return false;
  return a[0] * a[4] + a[1] * a[3] * Rational(2) - a[2] * a[2] * Rational(3) == q[2] + q[3] * Rational(3);
}

/// omega followed by projection from p = [0,0,0,1,0,0] onto y23 = 0: (y12, y13, y14, y24, y34).
template <class T>
std::vector<T> omega_projection_of(const std::vector<T>& x) {
  // x = (x12, x13, x14, x23, x24, x34)
  return {x[5], x[4] * Rational(-2), x[2] + x[3] * Rational(3), x[1] * Rational(-2), x[0]};
}

inline std::vector<Rational> omega(const std::vector<Rational>& x) {
  return {x[5], -2 * x[4], x[2] + 3 * x[3], x[2] - 3 * x[3], -2 * x[1], x[0]};
}

/// 12 y12 y34 - 3 y13 y24 + y14^2 - y23^2 on (y12, y13, y14, y23, y24, y34).
inline Rational q_prime(const std::vector<Rational>& y) {
  return 12 * y[0] * y[5] - 3 * y[1] * y[4] + y[2] * y[2] - y[3] * y[3];
}

inline std::vector<Rational> omega_and_projection(const BinaryACoords& f) {
  if (is_cone_point(f)) throw std::domain_error("omega_and_projection: undefined on the rational normal curve");
  return omega_projection_of(mu_map(f));
}

/// The y-coordinates are dual: monomial coefficient c_k of hess(f) pairs with y_{4-k} and the
/// sign (-1)^k. Returns the hessian's monomial coefficient vector read off from y.
inline std::vector<Rational> hessian_coefficients_from_projection(const std::vector<Rational>& y) {
  return {y[4], -y[3], y[2], -y[1], y[0]};
}

/// Symbolic checks of the degree-2 structure of h_{4,1}: the composite equals the polar map of
/// j, omega carries the Plucker quadric to 12 Q', and p lies off Q'.
inline bool h41_structure_check() {
  auto a = quartic_a_variables();
  auto q = quartic_minors(a);
  auto comp = omega_projection_of(q);
  auto j = quartic_j(a);
  for (unsigned k = 0; k < 5; ++k)
    if (!(comp[k] == partial_derivative(j, k))) return false;
  // Q' on omega(x) as a polynomial identity in the six x-variables
  std::vector<QPoly> x;
  for (unsigned i = 0; i < 6; ++i) x.push_back(QPoly::variable(6, i));
  std::vector<QPoly> y = {x[5], x[4] * Rational(-2), x[2] + x[3] * Rational(3), x[2] - x[3] * Rational(3),
                          x[1] * Rational(-2), x[0]};
  auto qp = y[0] * y[5] * Rational(12) - y[1] * y[4] * Rational(3) + y[2] * y[2] - y[3] * y[3];
  auto plucker = x[0] * x[5] - x[1] * x[4] + x[2] * x[3];
  if (!(qp == plucker * Rational(12))) return false;
  return !is_zero(q_prime({0, 0, 0, 1, 0, 0}));
}

/// Binary quartic g = b0 x0^4 + 4 b1 x0^3 x1 + 6 b2 x0^2 x1^2 + 4 b3 x0 x1^3 + b4 x1^4 lies on
/// the branch quadric b0 b4 - 4 b1 b3 + 3 b2^2 = 0.
inline bool on_branch_quadric(const BinaryACoords& g) {
  if (g.d != 4) throw std::invalid_argument("on_branch_quadric: need d = 4");
  return is_zero(quartic_i(g.a));
}

// Syzygetic pencil mu x0^4 + 6 lambda x0^2 x1^2 + mu x1^4, parameter [lambda : mu].

inline QPoly syzygetic_member(const ProjParam& lm) {
  QPoly f(2);
  f.add_term(Monomial{4, 0}, lm.v());
  f.add_term(Monomial{2, 2}, 6 * lm.u());
  f.add_term(Monomial{0, 4}, lm.v());
  return f;
}

inline ProjParam syzygetic_map(const ProjParam& lm) {
  const auto& l = lm.u();
  const auto& m = lm.v();
  return {m * m - 3 * l * l, 6 * l * m};
}

inline ProjParam syzygetic_J(const ProjParam& lm) {
  auto inv = quartic_invariants(BinaryACoords::from_poly(syzygetic_member(lm)));
  if (!inv.J) throw std::domain_error("syzygetic_J: i = j = 0");
  return *inv.J;
}

/// Binary form in (lambda, mu) whose roots are the fixed points of a map [l:m] -> [P:Q].
inline QPoly fixed_point_form(const QPoly& P, const QPoly& Q) {
  auto l = QPoly::variable(2, 0), m = QPoly::variable(2, 1);
  return l * Q - m * P;
}

inline QPoly syzygetic_fixed_point_form() {
  auto l = QPoly::variable(2, 0), m = QPoly::variable(2, 1);
  return fixed_point_form(m * m - l * l * Rational(3), l * m * Rational(6));
}

/// The rational fixed points [1:0], [1:3], [1:-3].
inline std::vector<ProjParam> syzygetic_fixed_points() {
  std::vector<ProjParam> out;
  auto form = syzygetic_fixed_point_form();
  for (const ProjParam& c : {ProjParam(1, 0), ProjParam(1, 3), ProjParam(1, -3), ProjParam(0, 1)})
    if (is_zero(evaluate(form, {c.u(), c.v()}))) out.push_back(c);
  return out;
}

/// Fixed-point form of the twice iterated syzygetic map.
inline QPoly syzygetic_double_fixed_point_form() {
  auto l = QPoly::variable(2, 0), m = QPoly::variable(2, 1);
  auto P = m * m - l * l * Rational(3), Q = l * m * Rational(6);
  return fixed_point_form(Q * Q - P * P * Rational(3), P * Q * Rational(6));
}

}  // namespace hessmap

#endif  // HESSMAP_BINARY_FORMS_HPP
