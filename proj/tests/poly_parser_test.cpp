#include <random>
#include <string>

#include <gtest/gtest.h>

#include "hessmap/parser.hpp"

using namespace hessmap;

namespace {

QPoly random_sparse(std::mt19937_64& rng) {
  std::size_t n = 1 + rng() % 6;
  QPoly f(n);
  int nterms = static_cast<int>(rng() % 7);
  for (int k = 0; k < nterms; ++k) {
    Monomial m(n);
    unsigned budget = static_cast<unsigned>(rng() % 9);
    for (std::size_t i = 0; i < n && budget; ++i) {
      unsigned e = static_cast<unsigned>(rng() % (budget + 1));
      m.set(i, e);
      budget -= e;
    }
    long num = static_cast<long>(rng() % 41) - 20, den = static_cast<long>(1 + rng() % 9);
    f.add_term(m, rational(num, den));
  }
  return f;
}

}  // namespace

TEST(ParsePoly, HessePencilMember) {
  auto f = parse_poly("x0^3 + x1^3 + x2^3 - 3*x0*x1*x2", 3);
  QPoly g(3);
  g.add_term(Monomial{3, 0, 0}, 1);
  g.add_term(Monomial{0, 3, 0}, 1);
  g.add_term(Monomial{0, 0, 3}, 1);
  g.add_term(Monomial{1, 1, 1}, -3);
  EXPECT_EQ(f, g);
}

TEST(ParsePoly, PerazzoCubic) {
  auto f = parse_poly("x0*x3^2 + x1*x3*x4 + x2*x4^2", 5);
  EXPECT_EQ(f.terms().size(), 3u);
  EXPECT_EQ(f.coefficient(Monomial{0, 1, 0, 1, 1}), 1);
  EXPECT_EQ(*f.homogeneous_degree(), 3u);
}

TEST(ParsePoly, MissingExponentReportsPosition) {
  try {
    parse_poly("x0^", 2);
    FAIL() << "expected parse_error";
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 4u);
  }
}

TEST(ParsePoly, Errors) {
  EXPECT_THROW(parse_poly("x0x1", 2), parse_error);
  EXPECT_THROW(parse_poly("2 x0", 2), parse_error);
  EXPECT_THROW(parse_poly("x2", 2), parse_error);
  EXPECT_THROW(parse_poly("x0^-1", 2), parse_error);
  EXPECT_THROW(parse_poly("x0^1/2", 2), parse_error);
  EXPECT_THROW(parse_poly("(x0+x1", 2), parse_error);
  EXPECT_THROW(parse_poly("1/0*x0", 2), parse_error);
  EXPECT_THROW(parse_poly("", 2), parse_error);
  try {
    parse_poly("x0 +\n  x1 +\n  y", 2);
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(ParsePoly, RationalsBindTighterThanProduct) {
  EXPECT_EQ(parse_poly("1/2*x0^2", 1), QPoly::monomial(Monomial{2}, Rational(1, 2)));
  EXPECT_EQ(parse_poly("-(x0 - 2/4)^2", 1), parse_poly("-x0^2 + x0 - 1/4", 1));
  EXPECT_EQ(parse_poly("  + x0 *\t x1 ", 2), parse_poly("x0*x1", 2));
}

TEST(ParsePoly, PrimeFieldReduction) {
  PrimeField K(5);
  auto f = parse_poly("7*x0 + 1/2*x1", 2, K);
  EXPECT_EQ(f.coefficient(Monomial{1, 0}).value(), 2u);
  EXPECT_EQ(f.coefficient(Monomial{0, 1}).value(), 3u);
}

TEST(PrintPoly, Examples) {
  EXPECT_EQ(print_poly(parse_poly("2*x0*x1*x2", 3)), "2*x0*x1*x2");
  EXPECT_EQ(print_poly(QPoly(3)), "0");
  EXPECT_EQ(print_poly(parse_poly("-x1^2 + x0^2", 2)), "x0^2 - x1^2");
  EXPECT_EQ(print_poly(parse_poly("-1/2*x1 + 3", 2)), "-1/2*x1 + 3");
}

TEST(PrintPoly, ParsePrintRoundTrip) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    auto f = random_sparse(rng);
    auto text = print_poly(f);
    auto g = parse_poly(text, f.nvars());
    EXPECT_EQ(f, g) << text;
    EXPECT_EQ(print_poly(g), text);
  }
}

TEST(PrintPoly, PrintParseIdempotent) {
  for (const char* s : {"(x0+x1)^3 - x1*(x0 + 2)", "3 - 3", "x1*x0*x1 + 1/3*x0", "-(x0)^0"}) {
    auto once = print_poly(parse_poly(s, 2));
    EXPECT_EQ(print_poly(parse_poly(once, 2)), once);
  }
}

TEST(SerializeJson, Schema) {
  auto f = parse_poly("x0^2 - 1/2*x1^2", 2);
  auto j = serialize_json(f);
  EXPECT_EQ(j.dump(), R"({"field":"Q","nvars":2,"terms":[[1,1,[2,0]],[-1,2,[0,2]]]})");
  EXPECT_EQ(deserialize_json<RationalField>(j), f);

  PrimeField K(31);
  auto g = parse_poly("x0 - x1", 2, K);
  auto jg = serialize_json(g);
  EXPECT_EQ(jg["p"], 31);
  EXPECT_EQ(jg["field"], "Fp");
  EXPECT_EQ(deserialize_json<PrimeField>(jg), g);
  EXPECT_THROW(deserialize_json<RationalField>(jg), field_mismatch);
}

TEST(SerializeJson, BigIntegersAsStrings) {
  auto f = parse_poly("123456789012345678901234567890*x0", 1);
  auto j = serialize_json(f);
  EXPECT_TRUE(j["terms"][0][0].is_string());
  EXPECT_EQ(deserialize_json<RationalField>(j), f);
}

TEST(RationalList, RoundTrip) {
  auto v = parse_rational_list("1,0,-1/2, 4/6");
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[3], Rational(2, 3));
  EXPECT_EQ(format_rational_list(v), "1,0,-1/2,2/3");
  EXPECT_THROW(parse_rational_list("1,,2"), std::invalid_argument);
}
