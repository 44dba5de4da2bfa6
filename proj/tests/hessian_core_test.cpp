#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hessmap/hessian.hpp"
#include "hessmap/parser.hpp"

using namespace hessmap;

namespace {

QPoly P(const char* s, std::size_t n) { return parse_poly(s, n); }

QPoly random_form(std::mt19937_64& rng, std::size_t n, unsigned d, int range = 4) {
  std::uniform_int_distribution<int> dist(-range, range);
  QPoly f(n);
  for (const auto& m : monomial_basis(n, d)) f.add_term(m, Rational(dist(rng)));
  return f;
}

QMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  // product of elementary shears has determinant 1
  auto m = QMatrix::identity(n);
  std::uniform_int_distribution<int> dist(-2, 2);
  for (int k = 0; k < 3 * static_cast<int>(n); ++k) {
    std::size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    auto e = QMatrix::identity(n);
    e(i, j) = dist(rng);
    m = m * e;
  }
  return m;
}

// t^k coefficient of hess(f + t g), computed through an extra variable.
QPoly t_coefficient(const QPoly& f, const QPoly& g, unsigned k) {
  std::size_t n = f.nvars();
  auto t = QPoly::variable(n + 1, n);
  auto h = hessian_determinant(extend_variables(f, n + 1) + t * extend_variables(g, n + 1), n);
  QPoly out(n);
  for (const auto& [m, c] : h.terms()) {
    if (m[n] != k) continue;
    Monomial e(n);
    for (std::size_t i = 0; i < n; ++i) e.set(i, m[i]);
    out.add_term(e, c);
  }
  return out;
}

}  // namespace

TEST(Hessian, Examples) {
  EXPECT_EQ(hess(P("x0*x1*x2", 3)), P("2*x0*x1*x2", 3));
  auto perazzo = hessian(P("x0*x3^2 + x1*x3*x4 + x2*x4^2", 5));
  EXPECT_TRUE(perazzo.vanished);
  EXPECT_TRUE(perazzo.hessian.is_zero());
  EXPECT_THROW(hess(P("x0*x3^2 + x1*x3*x4 + x2*x4^2", 5)), vanishing_hessian);
  EXPECT_EQ(hess(P("x0^4 + x1^4", 2)), P("144*x0^2*x1^2", 2));
}

TEST(Hessian, FurtherHandComputedValues) {
  EXPECT_EQ(hess(P("x1^2*x2 - x0^3", 3)), P("24*x0*x1^2", 3));
  EXPECT_EQ(hess(P("x0^2 + x1^2 + x2^2", 3)), P("8", 3));
}

TEST(Hessian, Errors) {
  EXPECT_THROW(hessian(P("x0^2 + x1", 2)), std::invalid_argument);
  EXPECT_THROW(hessian(P("x0 + x1", 2)), std::invalid_argument);
  EXPECT_THROW(hessian(QPoly(2)), std::invalid_argument);
}

TEST(Hessian, Covariance) {
  std::mt19937_64 rng(37);
  for (std::size_t n = 3; n <= 5; ++n) {
    unsigned d = n == 4 ? 4 : 3;
    for (int trial = 0; trial < 2; ++trial) {
      auto f = random_form(rng, n, d, 2);
      auto A = random_unimodular(rng, n);
      EXPECT_EQ(hess(linear_substitute(f, A)), linear_substitute(hess(f), A)) << "n=" << n;
    }
  }
  auto f = random_form(rng, 3, 4);
  auto A = random_unimodular(rng, 3);
  EXPECT_EQ(hess(linear_substitute(f, A)), linear_substitute(hess(f), A));
}

TEST(Hessian, ScalarHomogeneity) {
  std::mt19937_64 rng(41);
  for (std::size_t n = 2; n <= 4; ++n) {
    auto f = random_form(rng, n, 3);
    Rational lambda = rational(static_cast<long>(2 + rng() % 5), 3);
    Rational scale = 1;
    for (std::size_t i = 0; i < n; ++i) scale *= lambda;
    EXPECT_EQ(hess(f * lambda), hess(f) * scale);
  }
}

TEST(Hessian, ConesHaveVanishingHessian) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + trial % 3;   // ambient P^r, r+1 variables
    unsigned d = 2 + static_cast<unsigned>(rng() % 3);
    // a form in r variables, then a generic linear change so that the vertex is not a coordinate point
    auto g = extend_variables(random_form(rng, r, d, 3), r + 1);
    auto f = linear_substitute(g, random_unimodular(rng, r + 1));
    if (f.is_zero()) continue;
    EXPECT_TRUE(hessian(f).vanished);
    EXPECT_TRUE(cone_test(f).is_cone);
  }
}

TEST(Hessian, NonConesHaveNonvanishingHessian) {
  std::mt19937_64 rng(47);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + trial % 3;
    unsigned d = 2 + static_cast<unsigned>(rng() % 3);
    auto f = random_form(rng, r + 1, d, 3);
    if (f.is_zero() || cone_test(f).is_cone) continue;
    ++checked;
    EXPECT_FALSE(hessian(f).vanished) << print_poly(f);
  }
  EXPECT_GT(checked, 190);
}

TEST(SimultaneousHessian, BinaryPowerOfX0) {
  std::mt19937_64 rng(53);
  for (unsigned d = 2; d <= 6; ++d) {
    auto f = random_form(rng, 2, d);
    auto g = QPoly::monomial(Monomial{d, 0}, 1);
    auto expected = QPoly::monomial(Monomial{d - 2, 0}, Rational(d * (d - 1))) *
                    partial_derivative(partial_derivative(f, 1), 1);
    EXPECT_EQ(simultaneous_hessian(f, g), expected);
  }
}

TEST(SimultaneousHessian, SelfIsMultipleOfHessian) {
  std::mt19937_64 rng(59);
  for (std::size_t n = 2; n <= 4; ++n) {
    auto f = random_form(rng, n, 3);
    EXPECT_EQ(simultaneous_hessian(f, f), hess(f) * Rational(static_cast<long>(n)));
  }
}

TEST(SimultaneousHessian, FirstOrderTermOfPencil) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 5; ++trial) {
    auto f = random_form(rng, 3, 3), g = random_form(rng, 3, 3);
    EXPECT_EQ(simultaneous_hessian(f, g), t_coefficient(f, g, 1));
    EXPECT_EQ(hess(f), t_coefficient(f, g, 0));
  }
}

TEST(SimultaneousHessian, LinearInSecondArgument) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 5; ++trial) {
    auto f = random_form(rng, 3, 3), g = random_form(rng, 3, 3), k = random_form(rng, 3, 3);
    Rational a(3, 2), b(-5);
    EXPECT_EQ(simultaneous_hessian(f, g * a + k * b),
              simultaneous_hessian(f, g) * a + simultaneous_hessian(f, k) * b);
  }
  EXPECT_THROW(simultaneous_hessian(P("x0^3", 2), P("x1^2", 2)), std::invalid_argument);
}

TEST(DifferentialMatrix, StandardWaringTernaryCubicIsInjective) {
  auto f = P("x0^3 + x1^3 + x2^3 + (x0+x1+x2)^3", 3);
  auto dm = differential_matrix(f);
  EXPECT_EQ(dm.matrix.rows(), 10u);
  EXPECT_EQ(dm.matrix.cols(), 10u);
  EXPECT_EQ(rank(dm.matrix), 10u);
}

TEST(DifferentialMatrix, FermatBinaryCubicInThreeVariables) {
  // hess f = 0 here and dH_f(g) = 36 x0 x1 g_22, whose image is 3-dimensional
  auto f = P("x0^3 + x1^3", 3);
  auto res = rank_kernel_solve(differential_matrix(f).matrix);
  EXPECT_EQ(res.rank, 3u);
  EXPECT_EQ(res.kernel.size(), 7u);
  for (const char* g : {"x2^3", "x0*x2^2", "x1*x2^2"}) {
    auto gp = P(g, 3);
    auto g22 = partial_derivative(partial_derivative(gp, 2), 2);
    EXPECT_EQ(simultaneous_hessian(f, gp), P("36*x0*x1", 3) * g22);
  }
}

TEST(DifferentialMatrix, ConesAreNotImmersive) {
  auto f = P("x0^2*x1 + x1^3", 3);
  EXPECT_LT(differential_rank(f), 10u);
}

TEST(DifferentialMatrix, ColumnsMatchDefinition) {
  std::mt19937_64 rng(71);
  auto f = random_form(rng, 3, 3);
  auto dm = differential_matrix(f);
  for (std::size_t c = 0; c < dm.col_basis.size(); ++c) {
    auto col = simultaneous_hessian(f, QPoly::monomial(dm.col_basis[c], 1));
    auto v = coefficient_vector(col, dm.row_basis);
    for (std::size_t r = 0; r < v.size(); ++r) EXPECT_EQ(dm.matrix(r, c), v[r]);
  }
}

TEST(ConeTest, Examples) {
  auto a = cone_test(P("x0^3 + x1^3", 3));
  EXPECT_TRUE(a.is_cone);
  EXPECT_EQ(a.polar_rank, 2u);
  auto b = cone_test(P("x0*x3^2 + x1*x3*x4 + x2*x4^2", 5));
  EXPECT_FALSE(b.is_cone);
  EXPECT_EQ(b.polar_rank, 5u);
  std::mt19937_64 rng(73);
  auto c = cone_test(random_form(rng, 3, 3));
  EXPECT_FALSE(c.is_cone);
  EXPECT_EQ(c.polar_rank, 3u);
  // a cone whose vertex is not a coordinate point
  EXPECT_TRUE(cone_test(P("(x0 - x2)^3 + (x1 + x2)^3", 3)).is_cone);
}

TEST(SecondPolar, Examples) {
  EXPECT_TRUE(second_polar(P("x0^5", 2), {0, 1}).is_zero());
  std::mt19937_64 rng(79);
  auto f = random_form(rng, 2, 4);
  Rational u0(2), u1(-3);
  auto f0 = partial_derivative(f, 0), f1 = partial_derivative(f, 1);
  auto expected = partial_derivative(f0, 0) * (u0 * u0) + partial_derivative(f0, 1) * (2 * u0 * u1) +
                  partial_derivative(f1, 1) * (u1 * u1);
  EXPECT_EQ(second_polar(f, {u0, u1}), expected);
  EXPECT_THROW(second_polar(f, {0, 0}), std::invalid_argument);
}

TEST(PencilLimit, PowerOfLinearForm) {
  // alpha = (u0 x0 + u1 x1)^d, f generic: limit ~ alpha^{d-2} times the second polar of f at (u1, -u0)
  std::mt19937_64 rng(83);
  for (unsigned d = 3; d <= 6; ++d) {
    Rational u0(2), u1(5);
    auto l = P("2*x0 + 5*x1", 2);
    auto alpha = pow(l, d);
    auto f = random_form(rng, 2, d);
    auto lim = pencil_limit_hessian(alpha, f);
    ASSERT_TRUE(lim);
    EXPECT_EQ(lim->order, 1u);
    auto expected = pow(l, d - 2) * second_polar(f, {u1, -u0});
    EXPECT_TRUE(is_proportional(lim->leading, expected)) << d;
  }
}

TEST(PencilLimit, ThreeConcurrentLines) {
  // f22 times the binary quadric x0^2 + x0 x1 + x1^2, with factor -4
  std::mt19937_64 rng(89);
  auto alpha = P("x0*x1*(x0+x1)", 3);
  for (int trial = 0; trial < 3; ++trial) {
    auto f = random_form(rng, 3, 3);
    auto lim = pencil_limit_hessian(alpha, f);
    ASSERT_TRUE(lim);
    EXPECT_EQ(lim->order, 1u);
    auto f22 = partial_derivative(partial_derivative(f, 2), 2);
    EXPECT_EQ(lim->leading, f22 * P("x0^2 + x0*x1 + x1^2", 3) * Rational(-4));
  }
}

TEST(PencilLimit, TripleLine) {
  auto lim = pencil_limit_hessian(P("x0^3", 3), P("x1^3 + x2^3 + 36*x0*x1*x2", 3));
  ASSERT_TRUE(lim);
  EXPECT_EQ(lim->order, 2u);
  EXPECT_EQ(lim->leading, P("216*x0*(x1*x2 - 36*x0^2)", 3));
}

TEST(PencilLimit, IdenticallyVanishingIsReported) {
  EXPECT_FALSE(pencil_limit_hessian(P("x0^3", 3), P("x1^3", 3)));
  EXPECT_THROW(pencil_limit_hessian(P("x0^3", 3), P("x1^2", 3)), std::invalid_argument);
}
