#ifndef HESSMAP_FF_LAB_HPP
#define HESSMAP_FF_LAB_HPP

// Fibre statistics of the Hessian maps h_{4,1} (binary quartics) and h_{3,2} (plane cubics) over
// prime fields, by enumerating every point of the projective coefficient space.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "hessian.hpp"
#include "parser.hpp"
#include "poly.hpp"

namespace hessmap {

struct CompiledTerm {
  Integer coefficient;
  std::vector<std::uint8_t> vars;  // coefficient-variable indices, with multiplicity
};

/// hess of the generic form of degree d in r+1 variables, as integer polynomials in its
/// coefficients (ordered as monomial_basis(r+1, d)), divided by their common content. Target
/// coordinates follow monomial_basis(r+1, (r+1)(d-2)).
struct CompiledCoeffMap {
  unsigned d = 0, r = 0;
  std::vector<Monomial> source_basis, target_basis;
  Integer content;
  std::vector<std::vector<CompiledTerm>> coords;

  std::size_t source_dim() const { return source_basis.size(); }
  std::size_t target_dim() const { return target_basis.size(); }

  /// Exact values; content times this is the coefficient vector of hess.
  std::vector<Rational> evaluate(const std::vector<Rational>& a) const {
    if (a.size() != source_dim()) throw dimension_mismatch("CompiledCoeffMap: wrong source dimension");
    std::vector<Rational> out;
    for (const auto& terms : coords) {
      Rational acc = 0;
      for (const auto& t : terms) {
        Rational v = t.coefficient;
        for (auto i : t.vars) v *= a[i];
        acc += v;
      }
      out.push_back(acc);
    }
    return out;
  }
};

inline constexpr std::size_t kMaxCompiledTarget = 500;

inline CompiledCoeffMap compile_coeff_map(unsigned d, unsigned r) {
  if (d < 2) throw std::invalid_argument("compile_coeff_map: need d >= 2");
  std::size_t n = r + 1;
  CompiledCoeffMap out;
  out.d = d;
  out.r = r;
  out.source_basis = monomial_basis(n, d);
  unsigned target_degree = static_cast<unsigned>(n) * (d - 2);
  if (monomial_count(n, target_degree) > kMaxCompiledTarget)
    throw std::invalid_argument("compile_coeff_map: target dimension exceeds " + std::to_string(kMaxCompiledTarget));
  if (n + out.source_basis.size() > kMaxVars)
    throw std::invalid_argument("compile_coeff_map: too many coefficient variables");
  out.target_basis = monomial_basis(n, target_degree);
  std::size_t total = n + out.source_basis.size();
  QPoly generic(total);
  for (std::size_t k = 0; k < out.source_basis.size(); ++k) {
    Monomial m(total);
    for (std::size_t i = 0; i < n; ++i) m.set(i, out.source_basis[k][i]);
    m.set(n + k, 1);
    generic.add_term(m, 1);
  }
  auto h = hessian_determinant(generic, n);
  auto split = split_by_leading_variables(h, n);
  out.content = 0;
  out.coords.resize(out.target_basis.size());
  for (std::size_t t = 0; t < out.target_basis.size(); ++t) {
    Monomial key(n);
    for (std::size_t i = 0; i < n; ++i) key.set(i, out.target_basis[t][i]);
    auto it = split.find(key);
    if (it == split.end()) continue;
    for (const auto& [m, c] : it->second.terms()) {
      if (c.get_den() != 1) throw std::logic_error("compile_coeff_map: non-integer coefficient");
      CompiledTerm term{c.get_num(), {}};
      for (std::size_t k = 0; k < out.source_basis.size(); ++k)
        for (unsigned e = 0; e < m[n + k]; ++e) term.vars.push_back(static_cast<std::uint8_t>(k));
      if (term.vars.size() != n) throw std::logic_error("compile_coeff_map: coordinate is not of degree r+1");
      mpz_gcd(out.content.get_mpz_t(), out.content.get_mpz_t(), term.coefficient.get_mpz_t());
      out.coords[t].push_back(std::move(term));
    }
  }
  if (out.content == 0) throw std::logic_error("compile_coeff_map: generic hessian vanishes");
  for (auto& terms : out.coords)
    for (auto& t : terms) t.coefficient /= out.content;
  return out;
}

inline const CompiledCoeffMap& compiled_map(const std::string& id) {
  static const CompiledCoeffMap h41 = compile_coeff_map(4, 1);
  static const CompiledCoeffMap h32 = compile_coeff_map(3, 2);
  if (id == "h41") return h41;
  if (id == "h32") return h32;
  throw std::invalid_argument("unknown map '" + id + "' (expected h41 or h32)");
}

// ---------------------------------------------------------------------------------------------
// Classification of exceptional images

/// gcd(f, f_0, f_1) has positive degree: f is divisible by the square of a form of degree >= 1.
template <Field F>
bool square_divisible(const MultiPoly<F>& f) {
  if (f.nvars() != 2 || f.is_zero()) throw std::invalid_argument("square_divisible: need a nonzero binary form");
  auto f0 = partial_derivative(f, 0), f1 = partial_derivative(f, 1);
  MultiPoly<F> g = f;
  for (const auto& q : {f0, f1})
    if (!q.is_zero()) g = gcd_binary_form(g, q);
  return g.total_degree() > 0;
}

/// Flags for an image point: "square" (h41); "self_hessian" and "cone" (h32).
inline std::vector<std::string> classify_exceptional(const FpPoly& image, const std::string& map_id) {
  std::vector<std::string> flags;
  if (map_id == "h41") {
    if (square_divisible(image)) flags.push_back("square");
  } else if (map_id == "h32") {
    auto h = hessian(image);
    if (!h.vanished && is_proportional(h.hessian, image)) flags.push_back("self_hessian");
    if (cone_test(image).is_cone) flags.push_back("cone");
  } else {
    throw std::invalid_argument("classify_exceptional: unknown map '" + map_id + "'");
  }
  return flags;
}

// ---------------------------------------------------------------------------------------------
// Enumeration

struct ExceptionalFiber {
  std::vector<std::uint32_t> image;
  std::string image_text;
  std::uint64_t size = 0;
  std::vector<std::string> flags;
};

struct FiberReport {
  std::uint32_t p = 0;
  std::string map;
  unsigned generic_degree = 0;
  std::uint64_t domain = 0;
  std::uint64_t indeterminate = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;  // fibre size -> number of image points
  std::vector<ExceptionalFiber> exceptional;         // fibres larger than the generic degree
  std::uint64_t max_unflagged_fiber = 0;
  std::uint64_t unexplained = 0;                     // exceptional fibres without a flag

  std::uint64_t histogram_mass() const {
    std::uint64_t s = 0;
    for (const auto& [size, count] : histogram) s += size * count;
    return s;
  }
};

struct EnumerationOptions {
  unsigned workers = 1;
  std::uint64_t max_points = 4'000'000;
};

class budget_exceeded : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

/// |P^n(F_p)| for n+1 coordinates; UINT64_MAX on overflow.
inline std::uint64_t projective_points(std::uint32_t p, std::size_t coords) {
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < coords; ++k) {
    std::uint64_t block = 1;
    for (std::size_t i = k + 1; i < coords; ++i) {
      if (block > (UINT64_MAX / p)) return UINT64_MAX;
      block *= p;
    }
    total += block;
  }
  return total;
}

/// The normalized point with the given index: points with leading coordinate k come in a block
/// of p^(n-k) entries ordered by their tail read in base p.
inline void decode_point(std::uint64_t index, std::uint32_t p, std::vector<std::uint32_t>& x) {
  std::size_t n = x.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::uint64_t block = ipow(p, n - k - 1);
    if (index < block) {
      for (std::size_t i = 0; i < k; ++i) x[i] = 0;
      x[k] = 1;
      for (std::size_t i = n; i-- > k + 1;) {
        x[i] = static_cast<std::uint32_t>(index % p);
        index /= p;
      }
      return;
    }
    index -= block;
  }
  throw std::out_of_range("decode_point: index out of range");
}

struct ModPMap {
  std::uint32_t p;
  std::vector<std::vector<std::pair<std::uint64_t, std::vector<std::uint8_t>>>> coords;

  ModPMap(const CompiledCoeffMap& m, std::uint32_t prime) : p(prime) {
    for (const auto& terms : m.coords) {
      coords.emplace_back();
      for (const auto& t : terms) {
        auto c = mpz_fdiv_ui(t.coefficient.get_mpz_t(), p);
        if (c) coords.back().emplace_back(c, t.vars);
      }
    }
  }

  /// Writes the image and returns false when it vanishes.
  bool apply(const std::vector<std::uint32_t>& x, std::vector<std::uint32_t>& y) const {
    bool nonzero = false;
    for (std::size_t t = 0; t < coords.size(); ++t) {
      std::uint64_t acc = 0;
      for (const auto& [c, vars] : coords[t]) {
        std::uint64_t v = c;
        for (auto i : vars) v = v * x[i] % p;
        acc += v;
      }
      y[t] = static_cast<std::uint32_t>(acc % p);
      nonzero |= y[t] != 0;
    }
    return nonzero;
  }
};

inline std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) { return Fp(a, p).inverse().value(); }

inline std::uint64_t normalized_key(std::vector<std::uint32_t>& y, std::uint32_t p) {
  std::size_t lead = 0;
  while (y[lead] == 0) ++lead;
  std::uint64_t inv = inverse_mod(y[lead], p);
  std::uint64_t key = 0;
  for (auto& v : y) {
    v = static_cast<std::uint32_t>(v * inv % p);
    key = key * p + v;
  }
  return key;
}

inline std::vector<std::uint32_t> decode_key(std::uint64_t key, std::uint32_t p, std::size_t len) {
  std::vector<std::uint32_t> y(len);
  for (std::size_t i = len; i-- > 0;) {
    y[i] = static_cast<std::uint32_t>(key % p);
    key /= p;
  }
  return y;
}

struct PartialScan {
  std::unordered_map<std::uint64_t, std::uint32_t> images;
  std::uint64_t indeterminate = 0;
};

inline PartialScan scan_range(const ModPMap& map, std::size_t source_dim, std::uint64_t begin, std::uint64_t end) {
  PartialScan out;
  std::vector<std::uint32_t> x(source_dim), y(map.coords.size());
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    decode_point(idx, map.p, x);
    if (!map.apply(x, y)) {
      ++out.indeterminate;
      continue;
    }
    ++out.images[normalized_key(y, map.p)];
  }
  return out;
}

}  // namespace detail

inline unsigned generic_degree_of(const std::string& map_id) {
  if (map_id == "h41") return 2;
  if (map_id == "h32") return 3;
  throw std::invalid_argument("unknown map '" + map_id + "' (expected h41 or h32)");
}

/// Full scan of P^n(F_p) for map h41 or h32. The index space is split into contiguous ranges,
/// one per worker, and partial counts are merged; the report does not depend on the split.
inline FiberReport enumerate_fibers(const std::string& map_id, std::uint32_t p, const EnumerationOptions& opt = {}) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("enumerate_fibers: p must be an odd prime");
  if (opt.workers == 0) throw std::invalid_argument("enumerate_fibers: need at least one worker");
  const auto& cmap = compiled_map(map_id);
  if (cmap.content % p == 0) throw std::invalid_argument("enumerate_fibers: p divides the map's content");
  FiberReport rep;
  rep.p = p;
  rep.map = map_id;
  rep.generic_degree = generic_degree_of(map_id);
  rep.domain = detail::projective_points(p, cmap.source_dim());
  if (rep.domain > opt.max_points)
    throw budget_exceeded("enumerate_fibers: " + std::to_string(rep.domain) + " points exceed the budget of " +
                          std::to_string(opt.max_points));
  std::uint64_t key_space = 1;
  for (std::size_t t = 0; t < cmap.target_dim(); ++t) {
    if (key_space > UINT64_MAX / p) throw budget_exceeded("enumerate_fibers: image keys do not fit in 64 bits");
    key_space *= p;
  }
  detail::ModPMap mp(cmap, p);

  std::vector<detail::PartialScan> parts(opt.workers);
  std::vector<std::thread> threads;
  std::uint64_t chunk = (rep.domain + opt.workers - 1) / opt.workers;
  for (unsigned w = 0; w < opt.workers; ++w) {
    std::uint64_t b = std::min(rep.domain, w * chunk), e = std::min(rep.domain, b + chunk);
    threads.emplace_back([&, w, b, e] { parts[w] = detail::scan_range(mp, cmap.source_dim(), b, e); });
  }
  for (auto& t : threads) t.join();

  std::unordered_map<std::uint64_t, std::uint32_t> images = std::move(parts[0].images);
  rep.indeterminate = parts[0].indeterminate;
  for (unsigned w = 1; w < opt.workers; ++w) {
    rep.indeterminate += parts[w].indeterminate;
    for (const auto& [k, c] : parts[w].images) images[k] += c;
  }

  std::vector<std::pair<std::uint64_t, std::uint32_t>> large;
  for (const auto& [key, count] : images) {
    ++rep.histogram[count];
    if (count > rep.generic_degree)
      large.emplace_back(key, count);
    else
      rep.max_unflagged_fiber = std::max<std::uint64_t>(rep.max_unflagged_fiber, count);
  }
  std::sort(large.begin(), large.end());
  PrimeField K(p);
  for (const auto& [key, count] : large) {
    ExceptionalFiber ex;
    ex.image = detail::decode_key(key, p, cmap.target_dim());
    FpPoly img(cmap.r + 1, K);
    for (std::size_t t = 0; t < ex.image.size(); ++t)
      if (ex.image[t]) img.add_term(cmap.target_basis[t], K.from_int(ex.image[t]));
    ex.image_text = print_poly(img);
    ex.size = count;
    ex.flags = classify_exceptional(img, map_id);
    if (ex.flags.empty()) {
      ++rep.unexplained;
      rep.max_unflagged_fiber = std::max<std::uint64_t>(rep.max_unflagged_fiber, count);
    }
    rep.exceptional.push_back(std::move(ex));
  }
  return rep;
}

inline nlohmann::json to_json(const FiberReport& rep) {
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [size, count] : rep.histogram) hist[std::to_string(size)] = count;
  nlohmann::json ex = nlohmann::json::array();
  for (const auto& e : rep.exceptional)
    ex.push_back({{"image", e.image_text}, {"size", e.size}, {"flags", e.flags}});
  return {{"p", rep.p},
          {"map", rep.map},
          {"domain", rep.domain},
          {"indeterminate", rep.indeterminate},
          {"histogram", hist},
          {"exceptional", ex},
          {"generic_degree", rep.generic_degree},
          {"max_unflagged_fiber", rep.max_unflagged_fiber},
          {"unexplained", rep.unexplained}};
}

}  // namespace hessmap

#endif  // HESSMAP_FF_LAB_HPP
