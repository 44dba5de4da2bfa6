#ifndef HESSMAP_MONOMIAL_HPP
#define HESSMAP_MONOMIAL_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace hessmap {

inline constexpr std::size_t kMaxVars = 16;
inline constexpr unsigned kMaxExponent = 255;

/// Exponent vector of a monomial in a fixed number of variables (at most kMaxVars).
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : n_(check_nvars(nvars)) {}
  Monomial(std::initializer_list<unsigned> exps) : n_(check_nvars(exps.size())) {
    std::size_t i = 0;
    for (unsigned e : exps) set(i++, e);
  }
  explicit Monomial(const std::vector<unsigned>& exps) : n_(check_nvars(exps.size())) {
    for (std::size_t i = 0; i < exps.size(); ++i) set(i, exps[i]);
  }

  static Monomial variable(std::size_t nvars, std::size_t i, unsigned power = 1) {
    Monomial m(nvars);
    m.set(i, power);
    return m;
  }

  std::size_t nvars() const { return n_; }
  unsigned operator[](std::size_t i) const { return e_[i]; }
  unsigned degree() const { return std::accumulate(e_.begin(), e_.begin() + n_, 0u); }

  void set(std::size_t i, unsigned e) {
    if (i >= n_) throw std::out_of_range("Monomial: variable index " + std::to_string(i) + " out of range");
    if (e > kMaxExponent) throw std::overflow_error("Monomial: exponent exceeds " + std::to_string(kMaxExponent));
    e_[i] = static_cast<std::uint8_t>(e);
  }

  std::vector<unsigned> exponents() const { return {e_.begin(), e_.begin() + n_}; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("Monomial: variable count mismatch");
    Monomial m(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) m.set(i, unsigned{a.e_[i]} + b.e_[i]);
    return m;
  }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (e_[i] > other.e_[i]) return false;
    return true;
  }

  /// other / this; requires divides(other).
  Monomial quotient_of(const Monomial& other) const {
    Monomial m(n_);
    for (std::size_t i = 0; i < n_; ++i) m.e_[i] = static_cast<std::uint8_t>(other.e_[i] - e_[i]);
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.n_ == b.n_ && a.e_ == b.e_; }

 private:
  static std::uint8_t check_nvars(std::size_t n) {
    if (n == 0 || n > kMaxVars)
      throw std::invalid_argument("Monomial: variable count must be in [1, " + std::to_string(kMaxVars) + "]");
    return static_cast<std::uint8_t>(n);
  }

  std::array<std::uint8_t, kMaxVars> e_{};
  std::uint8_t n_ = 0;
};

/// Graded lexicographic comparison, x0 > x1 > ...; true when a precedes b in canonical order
/// (i.e. a is the larger monomial).
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    for (std::size_t i = 0; i < a.nvars(); ++i)
      if (a[i] != b[i]) return a[i] > b[i];
    return false;
  }
};

/// All monomials of total degree `degree` in `nvars` variables, in canonical order.
inline std::vector<Monomial> monomial_basis(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  std::vector<unsigned> e(nvars, 0);
  // lexicographically decreasing enumeration of compositions
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == nvars) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, degree);
  return out;
}

inline std::size_t monomial_count(std::size_t nvars, unsigned degree) {
  // C(degree + nvars - 1, nvars - 1)
  std::size_t r = 1;
  for (std::size_t k = 1; k < nvars; ++k) r = r * (degree + k) / k;
  return r;
}

}  // namespace hessmap

#endif  // HESSMAP_MONOMIAL_HPP
