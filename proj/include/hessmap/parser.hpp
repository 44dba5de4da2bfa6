#ifndef HESSMAP_PARSER_HPP
#define HESSMAP_PARSER_HPP

// Text grammar and JSON interchange for polynomials.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := rational | var | '(' expr ')'
//   var    := 'x' digits
//
// A rational literal "n/d" is a single token, so "1/2*x0^2" is (1/2)*x0^2. Implicit
// multiplication is rejected.

#include <cctype>
#include <cstddef>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "poly.hpp"

namespace hessmap {

class parse_error : public std::invalid_argument {
 public:
  parse_error(const std::string& what, std::size_t line, std::size_t column)
      : std::invalid_argument(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

struct PolyExpr {
  struct Literal {
    Rational value;
  };
  struct Variable {
    std::size_t index;
  };
  struct Neg {
    std::unique_ptr<PolyExpr> operand;
  };
  struct Binary {
    char op;  // '+', '-', '*'
    std::unique_ptr<PolyExpr> lhs, rhs;
  };
  struct Pow {
    std::unique_ptr<PolyExpr> base;
    unsigned exponent;
  };
  std::variant<Literal, Variable, Neg, Binary, Pow> node;
};

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t nvars) : text_(text), nvars_(nvars) {}

  std::unique_ptr<PolyExpr> parse() {
    auto e = expr();
    skip_ws();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw parse_error(what, line, col);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  static std::unique_ptr<PolyExpr> make(auto node) {
    auto e = std::make_unique<PolyExpr>();
    e->node = std::move(node);
    return e;
  }

  std::unique_ptr<PolyExpr> expr() {
    std::unique_ptr<PolyExpr> lhs;
    if (peek('-')) {
      ++pos_;
      lhs = make(PolyExpr::Neg{term()});
    } else {
      if (peek('+')) ++pos_;
      lhs = term();
    }
    while (peek('+') || peek('-')) {
      char op = text_[pos_++];
      lhs = make(PolyExpr::Binary{op, std::move(lhs), term()});
    }
    return lhs;
  }

  std::unique_ptr<PolyExpr> term() {
    auto lhs = factor();
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) break;
      char c = text_[pos_];
      if (c == '*') {
        ++pos_;
        lhs = make(PolyExpr::Binary{'*', std::move(lhs), factor()});
      } else if (c == 'x' || c == '(' || std::isdigit(static_cast<unsigned char>(c))) {
        fail("implicit multiplication is not allowed");
      } else {
        break;
      }
    }
    return lhs;
  }

  std::unique_ptr<PolyExpr> factor() {
    auto b = base();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '-') fail("negative exponent");
      std::string d = digits();
      if (d.empty()) fail("expected a non-negative integer exponent");
      if (pos_ < text_.size() && (text_[pos_] == '/' || text_[pos_] == '.')) fail("non-integer exponent");
      if (d.size() > 4) fail("exponent too large");
      return make(PolyExpr::Pow{std::move(b), static_cast<unsigned>(std::stoul(d))});
    }
    return b;
  }

  std::unique_ptr<PolyExpr> base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return e;
    }
    if (c == 'x') {
      ++pos_;
      std::string d = digits();
      if (d.empty()) fail("expected variable index after 'x'");
      std::size_t idx = d.size() > 6 ? nvars_ : std::stoul(d);
      if (idx >= nvars_) fail("variable x" + d + " out of range for " + std::to_string(nvars_) + " variables");
      return make(PolyExpr::Variable{idx});
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        std::string den = digits();
        if (den.empty()) fail("expected denominator");
        Rational q(num + "/" + den, 10);
        if (q.get_den() == 0) fail("zero denominator");
        q.canonicalize();
        return make(PolyExpr::Literal{q});
      }
      return make(PolyExpr::Literal{Rational(num, 10)});
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

template <Field F>
MultiPoly<F> evaluate_expr(const PolyExpr& e, std::size_t nvars, const F& field) {
  using P = MultiPoly<F>;
  return std::visit(
      [&](const auto& n) -> P {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PolyExpr::Literal>) {
          return P::constant(nvars, field.from_rational(n.value), field);
        } else if constexpr (std::is_same_v<T, PolyExpr::Variable>) {
          return P::variable(nvars, n.index, field);
        } else if constexpr (std::is_same_v<T, PolyExpr::Neg>) {
          return -evaluate_expr(*n.operand, nvars, field);
        } else if constexpr (std::is_same_v<T, PolyExpr::Binary>) {
          P a = evaluate_expr(*n.lhs, nvars, field);
          P b = evaluate_expr(*n.rhs, nvars, field);
          if (n.op == '+') return a + b;
          if (n.op == '-') return a - b;
          return a * b;
        } else {
          return pow(evaluate_expr(*n.base, nvars, field), n.exponent);
        }
      },
      e.node);
}

inline std::string monomial_text(const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += '*';
    s += 'x' + std::to_string(i);
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s;
}

}  // namespace detail

inline std::unique_ptr<PolyExpr> parse_expr(std::string_view text, std::size_t nvars) {
  return detail::PolyParser(text, nvars).parse();
}

template <Field F = RationalField>
MultiPoly<F> parse_poly(std::string_view text, std::size_t nvars, F field = {}) {
  if (nvars == 0) throw std::invalid_argument("parse_poly: nvars must be positive");
  auto e = parse_expr(text, nvars);
  return detail::evaluate_expr(*e, nvars, field);
}

/// Deterministic text in canonical order, e.g. "x0^2 - 1/2*x1^2".
template <Field F>
std::string print_poly(const MultiPoly<F>& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    Rational q = f.field().lift(c);
    bool negative = sgn(q) < 0;
    if (negative) q = -q;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    std::string mono = detail::monomial_text(m);
    if (mono.empty()) {
      out += q.get_str();
    } else {
      if (q != 1) out += q.get_str() + "*";
      out += mono;
    }
  }
  return out;
}

template <Field F>
std::ostream& operator<<(std::ostream& os, const MultiPoly<F>& f) {
  return os << print_poly(f);
}

namespace detail {

inline nlohmann::json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

inline Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()), 10);
  if (j.is_string()) return Integer(j.get<std::string>(), 10);
  throw std::invalid_argument("polynomial JSON: coefficient must be an integer or a decimal string");
}

}  // namespace detail

/// {"nvars": n, "field": "Q"|"Fp", "p": optional, "terms": [[num, den, [e0..er]], ...]}.
/// Integers outside the signed 64-bit range are written as decimal strings.
template <Field F>
nlohmann::json serialize_json(const MultiPoly<F>& f) {
  nlohmann::json j;
  j["nvars"] = f.nvars();
  j["field"] = std::string(F::tag());
  if (auto p = f.field().prime()) j["p"] = *p;
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : f.terms()) {
    Rational q = f.field().lift(c);
    terms.push_back({detail::integer_json(q.get_num()), detail::integer_json(q.get_den()), m.exponents()});
  }
  j["terms"] = std::move(terms);
  return j;
}

template <Field F>
MultiPoly<F> deserialize_json(const nlohmann::json& j, F field = {}) {
  std::size_t n = j.at("nvars").get<std::size_t>();
  std::string tag = j.at("field").get<std::string>();
  if (tag != F::tag()) throw field_mismatch("polynomial JSON: field '" + tag + "' does not match " + std::string(F::tag()));
  if constexpr (std::is_same_v<F, PrimeField>) {
    if (!j.contains("p")) throw std::invalid_argument("polynomial JSON: Fp field needs \"p\"");
    field = PrimeField(j.at("p").get<std::uint32_t>());
  }
  MultiPoly<F> f(n, field);
  for (const auto& t : j.at("terms")) {
    if (!t.is_array() || t.size() != 3) throw std::invalid_argument("polynomial JSON: term must be [num, den, exps]");
    Rational q(detail::integer_from_json(t[0]), detail::integer_from_json(t[1]));
    if (q.get_den() == 0) throw std::invalid_argument("polynomial JSON: zero denominator");
    q.canonicalize();
    auto exps = t[2].get<std::vector<unsigned>>();
    if (exps.size() != n) throw variable_mismatch("polynomial JSON: exponent vector has wrong length");
    f.add_term(Monomial(exps), field.from_rational(q));
  }
  return f;
}

/// Comma separated rationals, e.g. "1,0,-1/2".
inline std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    out.push_back(parse_rational(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::string format_rational_list(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += v[i].get_str();
  }
  return s;
}

}  // namespace hessmap

#endif  // HESSMAP_PARSER_HPP
