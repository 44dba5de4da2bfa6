#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hessmap/binary_forms.hpp"

using namespace hessmap;

namespace {

QPoly P(const char* s, std::size_t n = 2) { return parse_poly(s, n); }

Rational small(std::mt19937_64& rng, int range = 5) {
  std::uniform_int_distribution<int> d(-range, range);
  return Rational(d(rng));
}

BinaryACoords random_a(std::mt19937_64& rng, unsigned d, int range = 5) {
  std::vector<Rational> a(d + 1);
  for (auto& c : a) c = rational(std::uniform_int_distribution<int>(-range, range)(rng), 1 + static_cast<long>(rng() % 3));
  return BinaryACoords(a);
}

BinaryACoords curve_point(const Rational& t, unsigned d, const Rational& scale = 1) {
  std::vector<Rational> a(d + 1);
  Rational p = scale;
  for (unsigned i = 0; i <= d; ++i, p *= t) a[i] = p;
  return BinaryACoords(a);
}

QMatrix random_sl2(std::mt19937_64& rng) {
  auto m = QMatrix::identity(2);
  for (int k = 0; k < 4; ++k) {
    auto e = QMatrix::identity(2);
    e(k % 2, 1 - k % 2) = small(rng, 2);
    m = m * e;
  }
  return m;
}

std::vector<Rational> monomial_coefficients(const QPoly& h, unsigned deg) {
  return coefficient_vector(h, monomial_basis(2, deg));
}

}  // namespace

TEST(BinaryACoords, RoundTrip) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    unsigned d = 1 + static_cast<unsigned>(rng() % 9);
    auto a = random_a(rng, d);
    if (a.is_zero_vector()) continue;
    EXPECT_EQ(BinaryACoords::from_poly(a.to_poly()).a, a.a);
  }
  EXPECT_EQ(BinaryACoords({1, 0, 0, 0, 1}).to_poly(), P("x0^4 + x1^4"));
  EXPECT_EQ(BinaryACoords::monomial(5, 2).to_poly(), P("x0^3*x1^2"));
}

TEST(ProjParam, Semantics) {
  EXPECT_EQ(ProjParam(0, 4), ProjParam::infinity());
  EXPECT_EQ(ProjParam(3, 3), ProjParam::affine(1));
  EXPECT_EQ(ProjParam(3, 3).str(), "1,1");
  EXPECT_EQ(ProjParam(0, -2).str(), "0,1");
  EXPECT_EQ(ProjParam::parse("2,-1"), ProjParam::affine(Rational(-1, 2)));
  EXPECT_THROW(ProjParam(0, 0), std::invalid_argument);
}

TEST(Hankel, Examples) {
  auto a = curve_point(2, 4);
  EXPECT_EQ(rank(hankel_matrix(a)), 1u);
  EXPECT_TRUE(is_cone_point(a));
  EXPECT_EQ(rank(hankel_matrix(BinaryACoords({1, 0, 0, 0, 1}))), 2u);
  EXPECT_FALSE(is_cone_point(BinaryACoords({1, 0, 0, 0, 1})));
}

TEST(Hankel, AgreesWithPolarRank) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    unsigned d = 2 + static_cast<unsigned>(rng() % 6);
    BinaryACoords a = trial % 2 ? random_a(rng, d) : curve_point(small(rng), d, 1 + small(rng, 3) * small(rng, 3));
    if (a.is_zero_vector()) continue;
    auto f = a.to_poly();
    EXPECT_EQ(is_cone_point(a), cone_test(f).is_cone);
    EXPECT_EQ(is_cone_point(a), hessian(f).vanished);
  }
}

TEST(Qp, Examples) {
  auto q = qp_symbolic(5);
  EXPECT_EQ(q[0], parse_poly("x0*x2 - x1^2", 6));
  auto v = qp_coefficients(BinaryACoords({1, 0, 0, 0, 1}));
  EXPECT_EQ(v, (std::vector<Rational>{0, 0, 1, 0, 0}));
  EXPECT_EQ(hess(P("x0^4 + x1^4")), P("144*x0^2*x1^2"));
  for (unsigned d = 3; d <= 9; ++d)
    for (auto c : qp_coefficients(curve_point(rational(-3, 2), d))) EXPECT_EQ(c, 0);
  EXPECT_THROW(qp_coefficients(BinaryACoords({1, 2, 3})), std::invalid_argument);
}

TEST(Qp, HessianIdentity) {
  std::mt19937_64 rng(107);
  for (unsigned d = 3; d <= 10; ++d)
    for (int trial = 0; trial < 3; ++trial) {
      auto a = random_a(rng, d);
      auto q = qp_coefficients(a);
      QPoly expected(2);
      for (unsigned p = 0; p < q.size(); ++p) expected.add_term(Monomial{2 * d - 4 - p, p}, q[p] * qp_scale(d));
      EXPECT_EQ(hessian(a.to_poly()).hessian, expected) << "d=" << d;
    }
}

TEST(Jacobian, MatchesSymbolicDerivative) {
  for (unsigned d = 3; d <= 9; ++d) {
    auto q = qp_symbolic(d);
    for (long p = 0; p < static_cast<long>(q.size()); ++p)
      for (long k = 0; k <= static_cast<long>(d); ++k) {
        long idx = p - k + 2;
        QPoly expected(d + 1);
        if (idx >= 0 && idx <= static_cast<long>(d))
          expected = QPoly::variable(d + 1, static_cast<std::size_t>(idx)) * jacobian_entry(p, k, d);
        EXPECT_EQ(partial_derivative(q[static_cast<std::size_t>(p)], static_cast<std::size_t>(k)), expected)
            << d << " " << p << " " << k;
      }
  }
  EXPECT_THROW(jacobian_entry(7, 0, 5), std::out_of_range);
  EXPECT_THROW(jacobian_entry(0, 6, 5), std::out_of_range);
}

TEST(Jacobian, DiagonalClosedForm) {
  for (unsigned d = 5; d <= 9; ++d)
    for (long q = 1; q < static_cast<long>(d); ++q) {
      long dd = d;
      Rational formula = Rational(binomial(dd - 2, q - 1)) *
                         rational((dd - 1) * (dd * q * q - 5 * dd * q + 2 * dd + 4 * q), 2 * q * (dd - q));
      EXPECT_EQ(jacobian_entry(q, q, d), formula) << d << " " << q;
    }
  // the single vanishing diagonal entry for d >= 4
  EXPECT_EQ(jacobian_entry(4, 4, 8), 0);
}

TEST(Jacobian, MaximalRank) {
  EXPECT_EQ(rank(jacobian_matrix(BinaryACoords::monomial(5, 2))), 6u);
  for (unsigned d = 4; d <= 12; ++d) {
    auto r = rank(jacobian_matrix(BinaryACoords::monomial(d, 2)));
    if (d == 8) {
      EXPECT_LT(r, 9u);
    } else {
      EXPECT_EQ(r, d + 1) << d;
    }
  }
  EXPECT_EQ(rank(jacobian_matrix(BinaryACoords::monomial(8, 5))), 9u);
}

TEST(Jacobian, CurveCutOutSchematicallyAtX0PowerD) {
  for (unsigned d = 3; d <= 10; ++d) {
    std::vector<Rational> e0(d + 1, Rational(0));
    e0[0] = 1;
    auto res = rank_kernel_solve(jacobian_matrix(BinaryACoords(e0)));
    EXPECT_EQ(res.kernel.size(), 2u) << d;
  }
}

TEST(Chord, Examples) {
  EXPECT_EQ(chord_image(ProjParam(1, 0), ProjParam(0, 1), 5), P("x0^3*x1^3"));
  EXPECT_TRUE(is_proportional(hess(P("x0^5 + x1^5")), P("x0^3*x1^3")));
  EXPECT_EQ(tangent_image(ProjParam(1, 0), 4), P("x1^4"));
}

TEST(Chord, HessianOfChordPoints) {
  std::mt19937_64 rng(109);
  for (int chord = 0; chord < 20; ++chord) {
    unsigned d = 3 + static_cast<unsigned>(rng() % 5);
    ProjParam x(small(rng), 1), y(1, small(rng));
    if (x == y) continue;
    auto alpha = vanishing_form(x), beta = vanishing_form(y);
    std::vector<QPoly> images;
    for (int k = 0; k < 5; ++k) {
      Rational l = rational(1 + static_cast<long>(rng() % 7), 2), m = -1 - static_cast<long>(rng() % 5);
      auto h = hess(pow(alpha, d) * l + pow(beta, d) * m);
      EXPECT_TRUE(is_proportional(h, chord_image(x, y, d)));
      images.push_back(h);
    }
    for (std::size_t i = 0; i < images.size(); ++i)
      for (std::size_t j = i + 1; j < images.size(); ++j) EXPECT_TRUE(is_proportional(images[i], images[j]));
  }
}

TEST(Chord, TangentLineImage) {
  // points alpha^d + s alpha^(d-1) gamma of the tangent line at alpha^d
  auto alpha = P("x0 + 2*x1"), gamma = P("x0 - x1");
  for (unsigned d = 3; d <= 6; ++d) {
    auto h = hess(pow(alpha, d) + pow(alpha, d - 1) * gamma * Rational(3));
    EXPECT_TRUE(is_proportional(h, tangent_image(ProjParam(2, -1), d)));
  }
}

TEST(SpecialFiber, UniqueForDegreesFiveToTwelve) {
  for (unsigned d = 5; d <= 12; ++d) {
    auto rep = special_fiber_verify(d);
    unsigned k = d == 8 ? 5 : d - 2;
    EXPECT_EQ(rep.target, k);
    EXPECT_TRUE(rep.curve_branch_ok) << d;
    EXPECT_TRUE(rep.unique) << d;
    EXPECT_EQ(rep.fiber_points, std::vector<unsigned>{k});
    EXPECT_EQ(rep.jacobian_rank, d + 1) << d;
    EXPECT_FALSE(rep.trace.empty());
  }
}

TEST(SpecialFiber, CascadeUsesEvenEquations) {
  for (unsigned d = 5; d <= 12; ++d) {
    if (d == 8) continue;
    auto rep = special_fiber_verify(d);
    // a_1..a_{d-3} are forced by Q_0, Q_2, ..., Q_{2(d-4)} with coefficient c_k
    std::vector<bool> seen(d + 1, false);
    for (const auto& s : rep.forced) {
      ASSERT_EQ(s.variables.size(), 1u);
      unsigned v = s.variables[0];
      if (v == 0 || v > d - 3) continue;
      long k = static_cast<long>(v) - 1;
      EXPECT_EQ(s.p, 2 * k) << d;
      EXPECT_EQ(s.coefficient, Rational(cascade_coefficient(d, k))) << d << " k=" << k;
      seen[v] = true;
    }
    for (unsigned v = 1; v <= d - 3; ++v) EXPECT_TRUE(seen[v]) << d << " a" << v;
  }
}

TEST(SpecialFiber, CascadeCoefficientsNonzero) {
  for (unsigned d = 5; d <= 12; ++d)
    for (long k = 1; k <= static_cast<long>(d) - 4; ++k) EXPECT_NE(cascade_coefficient(d, k), 0) << d << " " << k;
  EXPECT_EQ(cascade_coefficient(5, 0), -1);
}

TEST(SpecialFiber, DegreeEightAtX0SquaredX1Six) {
  // set-theoretically a single point, but the differential drops rank there
  auto rep = special_fiber_verify(8, 6u);
  EXPECT_EQ(rep.fiber_points, std::vector<unsigned>{6});
  EXPECT_EQ(rep.jacobian_rank, 8u);
}

TEST(SpecialFiber, SmallDegreesRejected) {
  EXPECT_THROW(special_fiber_verify(4), std::invalid_argument);
  EXPECT_THROW(special_fiber_verify(3), std::invalid_argument);
}

TEST(Quartic, MinorsAndHessianExpansion) {
  BinaryACoords a({1, 0, 0, 0, 1});
  EXPECT_EQ(quartic_qij(a), (std::vector<Rational>{0, 0, 1, 0, 0, 0}));
  EXPECT_TRUE(quartic_hessian_identity(a));
  std::mt19937_64 rng(113);
  for (int trial = 0; trial < 100; ++trial) {
    auto b = random_a(rng, 4);
    if (b.is_zero_vector()) continue;
    EXPECT_EQ(plucker_quadric(mu_map(b)), 0);
    if (trial < 20) {
      EXPECT_TRUE(quartic_hessian_identity(b));
    }
  }
  EXPECT_THROW(mu_map(BinaryACoords({0, 0, 0, 0, 0})), std::invalid_argument);
}

TEST(Quartic, InvariantsExamples) {
  auto h = quartic_invariants(BinaryACoords({1, 0, 0, 0, 1}));
  EXPECT_EQ(h.i, 1);
  EXPECT_EQ(h.j, 0);
  EXPECT_TRUE(h.harmonic());
  ASSERT_TRUE(h.J);
  EXPECT_TRUE(h.J->is_infinity());

  auto an = quartic_invariants(BinaryACoords::from_poly(P("x0^4 + 8*x0*x1^3")));
  EXPECT_EQ(an.i, 0);
  EXPECT_EQ(an.j, -4);
  EXPECT_TRUE(an.anharmonic());
  EXPECT_EQ(*an.J, ProjParam::affine(0));

  EXPECT_TRUE(quartic_polar_identities());
}

TEST(Quartic, InvariantsAreSl2Invariant) {
  std::mt19937_64 rng(127);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_a(rng, 4);
    if (a.is_zero_vector()) continue;
    auto g = BinaryACoords::from_poly(linear_substitute(a.to_poly(), random_sl2(rng)));
    auto before = quartic_invariants(a), after = quartic_invariants(g);
    EXPECT_EQ(before.i, after.i);
    EXPECT_EQ(before.j, after.j);
    EXPECT_EQ(before.J.has_value(), after.J.has_value());
    if (before.J) {
      EXPECT_EQ(*before.J, *after.J);
    }
  }
}

TEST(Quartic, DegreeTwoStructure) {
  EXPECT_TRUE(h41_structure_check());
  EXPECT_NE(q_prime({0, 0, 0, 1, 0, 0}), 0);
  std::mt19937_64 rng(131);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_a(rng, 4);
    if (is_cone_point(a)) continue;
    auto y = omega_and_projection(a);
    auto h = hessian(a.to_poly()).hessian;
    EXPECT_TRUE(proportional_vectors(hessian_coefficients_from_projection(y), monomial_coefficients(h, 4)));
    EXPECT_EQ(q_prime(omega(mu_map(a))), 12 * plucker_quadric(mu_map(a)));
  }
  EXPECT_THROW(omega_and_projection(curve_point(3, 4)), std::domain_error);
}

TEST(Quartic, RamificationAndBranchQuadric) {
  // hess(j) = c * j * i, so the ramification quadric is i = 0
  auto a = quartic_a_variables();
  auto j = quartic_j(a), i = quartic_i(a);
  EXPECT_TRUE(is_proportional(hess(j), j * i));

  std::mt19937_64 rng(137);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 30; ++trial) {
    auto b = random_a(rng, 4);
    if (is_zero(b.a[0])) continue;
    // choose a4 so that i(a) = 0
    b.a[4] = (4 * b.a[1] * b.a[3] - 3 * b.a[2] * b.a[2]) / b.a[0];
    if (is_cone_point(b)) continue;
    ++checked;
    auto x = mu_map(b);
    // the two preimages differ by the sign of y23 = x14 - 3 x23, which is i(a)
    EXPECT_EQ(omega(x)[3], 0);
    auto g = BinaryACoords::from_poly(hessian(b.to_poly()).hessian);
    EXPECT_TRUE(on_branch_quadric(g));
  }
  EXPECT_EQ(checked, 30);
  auto generic = BinaryACoords({1, 2, 0, -1, 3});
  EXPECT_NE(omega(mu_map(generic))[3], 0);
}

TEST(Syzygetic, MapAndFixedPoints) {
  EXPECT_EQ(syzygetic_map(ProjParam(0, 1)), ProjParam(1, 0));
  EXPECT_EQ(syzygetic_map(ProjParam(1, 3)), ProjParam(1, 3));
  EXPECT_EQ(syzygetic_map(ProjParam(1, 3)), ProjParam(6, 18));
  auto fixed = syzygetic_fixed_points();
  ASSERT_EQ(fixed.size(), 3u);
  EXPECT_EQ(fixed[0], ProjParam(1, 0));
  EXPECT_EQ(fixed[1], ProjParam(1, 3));
  EXPECT_EQ(fixed[2], ProjParam(1, -3));
  EXPECT_EQ(syzygetic_fixed_point_form(), P("9*x0^2*x1 - x1^3"));
}

TEST(Syzygetic, HessianStaysInPencil) {
  std::mt19937_64 rng(139);
  for (int trial = 0; trial < 20; ++trial) {
    ProjParam lm(small(rng), 1 + small(rng, 3) * small(rng, 3));
    auto h = hessian(syzygetic_member(lm)).hessian;
    auto image = syzygetic_member(syzygetic_map(lm));
    EXPECT_TRUE(is_proportional(h, image) || (h.is_zero() && image.is_zero()));
  }
}

TEST(Syzygetic, JInvariantAndDoubleFixedPoints) {
  std::mt19937_64 rng(149);
  for (int trial = 0; trial < 10; ++trial) {
    Rational l = small(rng), m = small(rng);
    if (l == 0 || m == 0 || m * m == l * l) continue;
    Rational num = (3 * l * l + m * m) * (3 * l * l + m * m) * (3 * l * l + m * m);
    Rational den = 729 * 64 * l * l * (m * m - l * l) * (m * m - l * l);
    EXPECT_EQ(syzygetic_J(ProjParam(l, m)), ProjParam(den, num));
  }
  auto form = syzygetic_double_fixed_point_form();
  EXPECT_EQ(gcd_binary_form(form, P("3*x0^2 + x1^2")), projective_normalize(P("3*x0^2 + x1^2")));
  EXPECT_TRUE(is_zero(evaluate(form, {Rational(1), Rational(3)})));
}

TEST(QuadricDims, Examples) {
  auto d3 = quadric_space_dims(3);
  EXPECT_EQ(d3.through_curve, 3u);
  EXPECT_EQ(d3.through_tangents, 0u);
  EXPECT_EQ(d3.difference, 3u);
  auto d4 = quadric_space_dims(4);
  EXPECT_EQ(d4.through_curve, 6u);
  EXPECT_EQ(d4.through_tangents, 1u);
  EXPECT_EQ(d4.difference, 5u);
  for (unsigned d = 5; d <= 8; ++d) EXPECT_EQ(quadric_space_dims(d).difference, 2 * d - 3) << d;
}

TEST(QuadricDims, TangentQuadricIsInvariantI) {
  // for d = 4 the unique quadric through the tangent developable is i
  auto basis = monomial_basis(5, 2);
  auto i = quartic_i(quartic_a_variables());
  for (Rational t : {Rational(-2), Rational(1, 3), Rational(5)})
    for (Rational s : {Rational(0), Rational(1), Rational(-4)}) {
      std::vector<Rational> pt(5);
      for (unsigned k = 0; k < 5; ++k) {
        Rational tk = 1, tk1 = 1;
        for (unsigned e = 0; e < k; ++e) tk *= t;
        for (unsigned e = 0; e + 1 < k; ++e) tk1 *= t;
        pt[k] = tk + (k ? s * k * tk1 : Rational(0));
      }
      EXPECT_EQ(evaluate(i, pt), 0);
    }
}

TEST(Squarefree, GenericHessiansAreReduced) {
  std::mt19937_64 rng(151);
  for (unsigned d = 5; d <= 8; ++d)
    for (int trial = 0; trial < 100; ++trial) {
      auto a = random_a(rng, d, 9);
      // zero coordinates are special positions, not generic ones
      if (std::any_of(a.a.begin(), a.a.end(), [](const Rational& c) { return is_zero(c); })) continue;
      bool sf = hessian_squarefree(a);
      auto h = hess(a.to_poly());
      bool oracle = gcd_binary_form(partial_derivative(h, 0), partial_derivative(h, 1)).total_degree() == 0;
      EXPECT_EQ(sf, oracle);
      EXPECT_TRUE(sf) << d << " " << print_poly(a.to_poly());
    }
}

TEST(Squarefree, SpecialForms) {
  EXPECT_FALSE(hessian_squarefree(BinaryACoords({1, 0, 0, 0, 1})));
  for (unsigned d = 5; d <= 8; ++d) {
    auto a = BinaryACoords::monomial(d, d - 2);
    auto h = hess(a.to_poly());
    EXPECT_TRUE(is_proportional(h, QPoly::monomial(Monomial{2, 2 * d - 6}, 1)));
    EXPECT_FALSE(hessian_squarefree(a));
  }
  // Q_0 = 0 puts a simple root of the hessian at [1:0]
  BinaryACoords r({1, 1, 1, 2, 0, 3});
  auto h = hess(r.to_poly());
  EXPECT_EQ(order_along_subspace(h, {1}), 1u);
  EXPECT_TRUE(hessian_squarefree(r));
  EXPECT_THROW(hessian_squarefree(curve_point(2, 5)), vanishing_hessian);
}
