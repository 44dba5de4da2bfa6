#ifndef HESSMAP_POLY_HPP
#define HESSMAP_POLY_HPP

// Sparse multivariate polynomials over an exact field, stored in canonical (grlex) order.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "matrix.hpp"
#include "monomial.hpp"

namespace hessmap {

class variable_mismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <Field F>
class MultiPoly {
 public:
  using value_type = typename F::value_type;
  using term_map = std::map<Monomial, value_type, GrlexGreater>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars, F field = {}) : field_(field), nvars_(nvars) {
    if (nvars == 0 || nvars > kMaxVars) throw std::invalid_argument("MultiPoly: bad variable count");
  }

  static MultiPoly constant(std::size_t nvars, const value_type& c, F field = {}) {
    MultiPoly p(nvars, field);
    p.add_term(Monomial(nvars), c);
    return p;
  }
  static MultiPoly constant(std::size_t nvars, long c, F field = {}) { return constant(nvars, field.from_int(c), field); }

  static MultiPoly variable(std::size_t nvars, std::size_t i, F field = {}) {
    MultiPoly p(nvars, field);
    p.add_term(Monomial::variable(nvars, i), field.one());
    return p;
  }

  static MultiPoly monomial(const Monomial& m, const value_type& c, F field = {}) {
    MultiPoly p(m.nvars(), field);
    p.add_term(m, c);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const F& field() const { return field_; }
  const term_map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  value_type coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  /// Adds c * m, dropping the term if it cancels.
  void add_term(const Monomial& m, const value_type& c) {
    if (m.nvars() != nvars_) throw variable_mismatch("MultiPoly: monomial has wrong variable count");
    if (hessmap::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (hessmap::is_zero(it->second)) terms_.erase(it);
    }
  }

  const Monomial& leading_monomial() const {
    if (terms_.empty()) throw std::domain_error("MultiPoly: zero polynomial has no leading term");
    return terms_.begin()->first;
  }
  const value_type& leading_coefficient() const {
    if (terms_.empty()) throw std::domain_error("MultiPoly: zero polynomial has no leading term");
    return terms_.begin()->second;
  }

  /// Total degree; -1 for the zero polynomial.
  int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.degree()); }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    unsigned d = terms_.begin()->first.degree();
    return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.degree() == d; });
  }

  /// Degree when nonzero and homogeneous.
  std::optional<unsigned> homogeneous_degree() const {
    if (terms_.empty() || !is_homogeneous()) return std::nullopt;
    return terms_.begin()->first.degree();
  }

  /// Degree in the variables [0, k) only; requires homogeneity in those variables.
  std::optional<unsigned> homogeneous_degree_in(std::size_t k) const {
    std::optional<unsigned> d;
    for (const auto& [m, c] : terms_) {
      unsigned e = 0;
      for (std::size_t i = 0; i < k; ++i) e += m[i];
      if (d && *d != e) return std::nullopt;
      d = e;
    }
    return d;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  MultiPoly& operator*=(const value_type& s) {
    if (hessmap::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(MultiPoly a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend MultiPoly operator*(MultiPoly a, const value_type& s) { return a *= s; }
  friend MultiPoly operator*(const value_type& s, MultiPoly a) { return a *= s; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly out(a.nvars_, a.field_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.field_ == b.field_ && a.terms_ == b.terms_;
  }

  void check_compatible(const MultiPoly& o) const {
    if (nvars_ != o.nvars_)
      throw variable_mismatch("MultiPoly: variable count mismatch (" + std::to_string(nvars_) + " vs " +
                              std::to_string(o.nvars_) + ")");
    if (!(field_ == o.field_)) throw field_mismatch("MultiPoly: coefficient field mismatch");
  }

 private:
  F field_{};
  std::size_t nvars_ = 1;
  term_map terms_;
};

using QPoly = MultiPoly<RationalField>;
using FpPoly = MultiPoly<PrimeField>;
using QMatrix = FieldMatrix<RationalField>;

enum class PolyOp { add, sub, mul };

template <Field F>
MultiPoly<F> poly_arith(const MultiPoly<F>& f, const MultiPoly<F>& g, PolyOp op) {
  switch (op) {
    case PolyOp::add: return f + g;
    case PolyOp::sub: return f - g;
    case PolyOp::mul: return f * g;
  }
  throw std::logic_error("poly_arith: unknown op");
}

template <Field F>
MultiPoly<F> pow(const MultiPoly<F>& f, unsigned k) {
  MultiPoly<F> acc = MultiPoly<F>::constant(f.nvars(), 1, f.field());
  MultiPoly<F> base = f;
  while (k) {
    if (k & 1) acc *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return acc;
}

template <Field F>
MultiPoly<F> partial_derivative(const MultiPoly<F>& f, std::size_t i) {
  if (i >= f.nvars())
    throw std::out_of_range("partial_derivative: variable index " + std::to_string(i) + " out of range");
  MultiPoly<F> out(f.nvars(), f.field());
  for (const auto& [m, c] : f.terms()) {
    unsigned e = m[i];
    if (e == 0) continue;
    Monomial dm = m;
    dm.set(i, e - 1);
    out.add_term(dm, c * f.field().from_int(static_cast<long>(e)));
  }
  return out;
}

/// Value of f at a point.
template <Field F>
typename F::value_type evaluate(const MultiPoly<F>& f, const std::vector<typename F::value_type>& point) {
  using V = typename F::value_type;
  if (point.size() != f.nvars()) throw variable_mismatch("evaluate: point has wrong length");
  V acc = f.field().zero();
  for (const auto& [m, c] : f.terms()) {
    V t = c;
    for (std::size_t i = 0; i < m.nvars(); ++i)
      for (unsigned e = 0; e < m[i]; ++e) t *= point[i];
    acc += t;
  }
  return acc;
}

/// Replaces each x_i by the polynomial images[i]; all images share a variable count.
template <Field F>
MultiPoly<F> compose(const MultiPoly<F>& f, const std::vector<MultiPoly<F>>& images) {
  if (images.size() != f.nvars()) throw variable_mismatch("compose: need one image per variable");
  if (images.empty()) throw std::invalid_argument("compose: no images");
  std::size_t n = images.front().nvars();
  // cache powers of each image
  std::vector<std::vector<MultiPoly<F>>> powers(f.nvars());
  auto power = [&](std::size_t i, unsigned e) -> const MultiPoly<F>& {
    auto& pw = powers[i];
    if (pw.empty()) pw.push_back(MultiPoly<F>::constant(n, 1, f.field()));
    while (pw.size() <= e) pw.push_back(pw.back() * images[i]);
    return pw[e];
  };
  MultiPoly<F> out(n, f.field());
  for (const auto& [m, c] : f.terms()) {
    MultiPoly<F> t = MultiPoly<F>::constant(n, c, f.field());
    for (std::size_t i = 0; i < m.nvars(); ++i)
      if (m[i]) t *= power(i, m[i]);
    out += t;
  }
  return out;
}

/// f with x_i replaced by sum_j M[i][j] * y_j.
template <Field F>
MultiPoly<F> linear_substitute(const MultiPoly<F>& f, const FieldMatrix<F>& M) {
  std::size_t n = f.nvars();
  if (M.rows() != n || M.cols() != n)
    throw dimension_mismatch("linear_substitute: matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  std::vector<MultiPoly<F>> images;
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly<F> li(n, f.field());
    for (std::size_t j = 0; j < n; ++j) li.add_term(Monomial::variable(n, j), M(i, j));
    images.push_back(std::move(li));
  }
  return compose(f, images);
}

/// Linear form sum_j coeffs[j] * x_j.
template <Field F>
MultiPoly<F> linear_form(const std::vector<typename F::value_type>& coeffs, F field = {}) {
  MultiPoly<F> l(coeffs.size(), field);
  for (std::size_t j = 0; j < coeffs.size(); ++j) l.add_term(Monomial::variable(coeffs.size(), j), coeffs[j]);
  return l;
}

/// Scales so the first coefficient in canonical order is 1 (zero stays zero).
template <Field F>
MultiPoly<F> projective_normalize(const MultiPoly<F>& f) {
  if (f.is_zero()) return f;
  return f * (f.field().one() / f.leading_coefficient());
}

/// lambda with f = lambda * g. Both zero gives lambda = 1; exactly one zero gives nullopt.
template <Field F>
std::optional<typename F::value_type> is_proportional(const MultiPoly<F>& f, const MultiPoly<F>& g) {
  f.check_compatible(g);
  if (f.is_zero() && g.is_zero()) return f.field().one();
  if (f.is_zero() || g.is_zero()) return std::nullopt;
  if (f.size() != g.size()) return std::nullopt;
  if (!(f.leading_monomial() == g.leading_monomial())) return std::nullopt;
  typename F::value_type lambda = f.leading_coefficient() / g.leading_coefficient();
  auto it = g.terms().begin();
  for (const auto& [m, c] : f.terms()) {
    if (!(m == it->first) || !(c == lambda * it->second)) return std::nullopt;
    ++it;
  }
  return lambda;
}

class infinite_order : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Vanishing order of f along the linear subspace {x_i = 0 : i in S}.
template <Field F>
unsigned order_along_subspace(const MultiPoly<F>& f, const std::set<std::size_t>& S) {
  if (f.is_zero()) throw infinite_order("order_along_subspace: zero polynomial has infinite order");
  unsigned best = ~0u;
  for (const auto& [m, c] : f.terms()) {
    unsigned s = 0;
    for (auto i : S) {
      if (i >= f.nvars()) throw std::out_of_range("order_along_subspace: variable index out of range");
      s += m[i];
    }
    best = std::min(best, s);
  }
  return best;
}

/// Embeds f into a ring with more variables (new variables appended, unused).
template <Field F>
MultiPoly<F> extend_variables(const MultiPoly<F>& f, std::size_t nvars) {
  if (nvars < f.nvars()) throw variable_mismatch("extend_variables: cannot shrink");
  MultiPoly<F> out(nvars, f.field());
  for (const auto& [m, c] : f.terms()) {
    Monomial e(nvars);
    for (std::size_t i = 0; i < m.nvars(); ++i) e.set(i, m[i]);
    out.add_term(e, c);
  }
  return out;
}

/// Drops trailing variables, which must not occur in f.
template <Field F>
MultiPoly<F> restrict_variables(const MultiPoly<F>& f, std::size_t nvars) {
  MultiPoly<F> out(nvars, f.field());
  for (const auto& [m, c] : f.terms()) {
    Monomial e(nvars);
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      if (i < nvars)
        e.set(i, m[i]);
      else if (m[i])
        throw variable_mismatch("restrict_variables: dropped variable x" + std::to_string(i) + " occurs");
    }
    out.add_term(e, c);
  }
  return out;
}

/// Groups f by its monomials in the variables [0, k): each key maps to the coefficient polynomial
/// in the remaining variables (kept in the full ring, with the first k exponents zeroed).
template <Field F>
std::map<Monomial, MultiPoly<F>, GrlexGreater> split_by_leading_variables(const MultiPoly<F>& f, std::size_t k) {
  std::map<Monomial, MultiPoly<F>, GrlexGreater> out;
  for (const auto& [m, c] : f.terms()) {
    Monomial head(k), tail(f.nvars());
    for (std::size_t i = 0; i < f.nvars(); ++i) {
      if (i < k)
        head.set(i, m[i]);
      else
        tail.set(i, m[i]);
    }
    auto [it, _] = out.try_emplace(head, MultiPoly<F>(f.nvars(), f.field()));
    it->second.add_term(tail, c);
  }
  return out;
}

/// Proportionality of f and g as polynomials in x_0..x_{k-1} over the fraction field of the
/// remaining variables: every 2x2 cross product of coefficient polynomials vanishes.
template <Field F>
bool proportional_over_parameters(const MultiPoly<F>& f, const MultiPoly<F>& g, std::size_t k) {
  f.check_compatible(g);
  auto a = split_by_leading_variables(f, k);
  auto b = split_by_leading_variables(g, k);
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
    if (!(ia->first == ib->first)) return false;
  // cross-check against the first key
  const auto& f0 = a.begin()->second;
  const auto& g0 = b.begin()->second;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
    if (!(ia->second * g0 - ib->second * f0).is_zero()) return false;
  return true;
}

/// Exact quotient a / b; throws when b does not divide a.
template <Field F>
MultiPoly<F> divide_exact(MultiPoly<F> a, const MultiPoly<F>& b) {
  a.check_compatible(b);
  if (b.is_zero()) throw std::domain_error("divide_exact: division by zero polynomial");
  MultiPoly<F> q(a.nvars(), a.field());
  const Monomial& lb = b.leading_monomial();
  typename F::value_type inv = a.field().one() / b.leading_coefficient();
  while (!a.is_zero()) {
    const Monomial& la = a.leading_monomial();
    if (!lb.divides(la)) throw std::domain_error("divide_exact: division is not exact");
    Monomial qm = lb.quotient_of(la);
    typename F::value_type qc = a.leading_coefficient() * inv;
    q.add_term(qm, qc);
    a -= MultiPoly<F>::monomial(qm, qc, a.field()) * b;
  }
  return q;
}

/// Coefficient vector of a homogeneous f in the given monomial basis; throws if f has a term
/// outside the basis.
template <Field F>
std::vector<typename F::value_type> coefficient_vector(const MultiPoly<F>& f, const std::vector<Monomial>& basis) {
  std::vector<typename F::value_type> v;
  v.reserve(basis.size());
  std::size_t found = 0;
  for (const auto& m : basis) {
    v.push_back(f.coefficient(m));
    if (!hessmap::is_zero(v.back())) ++found;
  }
  if (found != f.size()) throw std::invalid_argument("coefficient_vector: polynomial not in the span of the basis");
  return v;
}

template <Field F>
MultiPoly<F> from_coefficient_vector(const std::vector<typename F::value_type>& v, const std::vector<Monomial>& basis,
                                     F field = {}) {
  if (v.size() != basis.size()) throw dimension_mismatch("from_coefficient_vector: length mismatch");
  if (basis.empty()) throw std::invalid_argument("from_coefficient_vector: empty basis");
  MultiPoly<F> f(basis.front().nvars(), field);
  for (std::size_t i = 0; i < v.size(); ++i) f.add_term(basis[i], v[i]);
  return f;
}

namespace detail {

// Dense univariate polynomials, index = degree, no trailing zeros.
template <class V>
void trim(std::vector<V>& p) {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
}

template <Field F>
std::vector<typename F::value_type> univariate_rem(std::vector<typename F::value_type> a,
                                                   const std::vector<typename F::value_type>& b, const F& K) {
  using V = typename F::value_type;
  V inv = K.one() / b.back();
  while (a.size() >= b.size()) {
    V factor = a.back() * inv;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

}  // namespace detail

/// gcd of two binary forms, normalized to leading coefficient 1. The x0-adic part is
/// tracked separately, the rest is a univariate gcd of f(1, t) and g(1, t).
template <Field F>
MultiPoly<F> gcd_binary_form(const MultiPoly<F>& f, const MultiPoly<F>& g) {
  using V = typename F::value_type;
  f.check_compatible(g);
  if (f.nvars() != 2) throw variable_mismatch("gcd_binary_form: need binary forms");
  if (!f.is_homogeneous() || !g.is_homogeneous()) throw std::invalid_argument("gcd_binary_form: inputs must be forms");
  if (f.is_zero() && g.is_zero()) throw std::domain_error("gcd_binary_form: both inputs are zero");
  if (f.is_zero()) return projective_normalize(g);
  if (g.is_zero()) return projective_normalize(f);
  const F& K = f.field();

  auto dehomogenize = [&](const MultiPoly<F>& h, unsigned& x0_power) {
    unsigned n = h.leading_monomial().degree();
    std::vector<V> u(n + 1, K.zero());
    for (const auto& [m, c] : h.terms()) u[m[1]] = c;
    detail::trim(u);
    x0_power = n - static_cast<unsigned>(u.size() - 1);
    return u;
  };
  unsigned kf = 0, kg = 0;
  auto a = dehomogenize(f, kf);
  auto b = dehomogenize(g, kg);
  while (!b.empty()) {
    auto r = detail::univariate_rem(a, b, K);
    a = std::move(b);
    b = std::move(r);
  }
  unsigned du = static_cast<unsigned>(a.size() - 1);
  unsigned k = std::min(kf, kg);
  MultiPoly<F> out(2, K);
  for (unsigned i = 0; i <= du; ++i) out.add_term(Monomial{k + du - i, i}, a[i]);
  return projective_normalize(out);
}

/// Reduction of a rational polynomial modulo p.
inline FpPoly reduce_mod(const QPoly& f, const PrimeField& K) {
  FpPoly out(f.nvars(), K);
  for (const auto& [m, c] : f.terms()) out.add_term(m, K.from_rational(c));
  return out;
}

}  // namespace hessmap

#endif  // HESSMAP_POLY_HPP
