#ifndef HESSMAP_FIELD_HPP
#define HESSMAP_FIELD_HPP

// Exact coefficient fields: the rationals (GMP) and prime fields F_p with p < 2^31.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hessmap {

using Rational = mpq_class;
using Integer = mpz_class;

class field_mismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// n/d in lowest terms; mpq_class(n, d) alone does not canonicalize.
inline Rational rational(long n, long d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

/// Parses "n" or "n/d" (optional sign); the result is canonicalized.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) throw std::invalid_argument("empty rational literal");
  s = s.substr(b, e - b + 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

/// Element of F_p. Arithmetic between elements of different moduli throws field_mismatch.
class Fp {
 public:
  Fp() = default;
  Fp(std::int64_t value, std::uint32_t modulus) : modulus_(modulus) {
    if (modulus == 0) throw std::invalid_argument("Fp: modulus must be nonzero");
    auto m = static_cast<std::int64_t>(modulus);
    value %= m;
    if (value < 0) value += m;
    value_ = static_cast<std::uint32_t>(value);
  }

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return modulus_; }

  Fp& operator+=(const Fp& o) {
    check(o);
    std::uint64_t s = std::uint64_t{value_} + o.value_;
    if (s >= modulus_) s -= modulus_;
    value_ = static_cast<std::uint32_t>(s);
    return *this;
  }
  Fp& operator-=(const Fp& o) {
    check(o);
    value_ = value_ >= o.value_ ? value_ - o.value_ : static_cast<std::uint32_t>(std::uint64_t{value_} + modulus_ - o.value_);
    return *this;
  }
  Fp& operator*=(const Fp& o) {
    check(o);
    value_ = static_cast<std::uint32_t>(std::uint64_t{value_} * o.value_ % modulus_);
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

  Fp inverse() const {
    if (value_ == 0) throw std::domain_error("Fp: division by zero");
    // Fermat: a^(p-2)
    return pow(modulus_ - 2);
  }
  Fp pow(std::uint64_t e) const {
    Fp base = *this, acc(1, modulus_);
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend Fp operator-(const Fp& a) { return Fp(0, a.modulus_) - a; }
  friend bool operator==(const Fp& a, const Fp& b) { return a.value_ == b.value_ && a.modulus_ == b.modulus_; }

 private:
  void check(const Fp& o) const {
    if (modulus_ != o.modulus_)
      throw field_mismatch("Fp: modulus mismatch " + std::to_string(modulus_) + " vs " + std::to_string(o.modulus_));
  }

  std::uint32_t value_ = 0;
  std::uint32_t modulus_ = 0;
};

inline bool is_zero(const Fp& a) { return a.value() == 0; }
inline std::string to_string(const Fp& a) { return std::to_string(a.value()); }

/// Field context for the rationals.
struct RationalField {
  using value_type = Rational;

  value_type from_int(long n) const { return Rational(n); }
  value_type from_rational(const Rational& q) const { return q; }
  value_type zero() const { return Rational(0); }
  value_type one() const { return Rational(1); }
  static constexpr std::string_view tag() { return "Q"; }
  std::optional<std::uint32_t> prime() const { return std::nullopt; }
  /// Lifts a coefficient to a rational representative (identity here).
  Rational lift(const value_type& v) const { return v; }
  bool operator==(const RationalField&) const = default;
};

/// Field context for F_p; p must be prime and below 2^31.
struct PrimeField {
  using value_type = Fp;

  PrimeField() = default;
  explicit PrimeField(std::uint32_t modulus) : p(modulus) {
    if (modulus >= (1u << 31) || !is_prime(modulus))
      throw std::invalid_argument("PrimeField: " + std::to_string(modulus) + " is not a prime below 2^31");
  }

  value_type from_int(long n) const { return Fp(n, p); }
  value_type from_rational(const Rational& q) const {
    Integer num = q.get_num() % p;
    Integer den = q.get_den() % p;
    if (den == 0) throw std::domain_error("PrimeField: denominator divisible by " + std::to_string(p));
    return Fp(num.get_si(), p) / Fp(den.get_si(), p);
  }
  value_type zero() const { return Fp(0, p); }
  value_type one() const { return Fp(1, p); }
  static constexpr std::string_view tag() { return "Fp"; }
  std::optional<std::uint32_t> prime() const { return p; }
  Rational lift(const value_type& v) const { return Rational(static_cast<unsigned long>(v.value())); }
  bool operator==(const PrimeField&) const = default;

  std::uint32_t p = 2;
};

template <class F>
concept Field = requires(const F& f, long n, const Rational& q, const typename F::value_type& v) {
  typename F::value_type;
  { f.from_int(n) } -> std::convertible_to<typename F::value_type>;
  { f.from_rational(q) } -> std::convertible_to<typename F::value_type>;
  { f.lift(v) } -> std::convertible_to<Rational>;
  { is_zero(v) } -> std::convertible_to<bool>;
};

inline Integer binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace hessmap

#endif  // HESSMAP_FIELD_HPP
