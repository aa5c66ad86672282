#include <gtest/gtest.h>

#include "support/random_instances.hpp"
#include "thickmorph/thickmorph.hpp"

namespace thickmorph {
namespace {

using testing::Rng;

class OneDimFunctional : public ::testing::Test {
 protected:
  ChartPair ch{1, 1, {"s"}};
  Poly P(const char* e) const { return parse_poly(e, ch.base()); }
  Poly PK(const char* e, unsigned K) const { return parse_poly(e, ch.ring(K)); }
  GenFunction gen(std::initializer_list<std::pair<MultiIndex, const char*>> entries, unsigned kq = 2) const {
    GenFunction S(ch, kq);
    for (const auto& [idx, e] : entries) S.set(idx, P(e));
    return S;
  }
};

TEST_F(OneDimFunctional, Evaluate) {
  auto id = Functional::thick(gen({{{0}, "x1"}}, 1), 3);
  EXPECT_EQ(evaluate(id, P("y1^2")), PK("lambda*x1^2", 3));
  auto quad = Functional::thick(gen({{{0}, "x1"}, {{0, 0}, "s"}}), 3);
  EXPECT_EQ(evaluate(quad, P("y1^2")), PK("lambda*x1^2 + 4*s*x1^2*lambda^2 + 16*s^2*x1^2*lambda^3", 3));
  auto affine = Functional::thick(gen({{{}, "x1 + s"}, {{0}, "x1"}, {{0, 0}, "s"}}), 3);
  EXPECT_EQ(evaluate(affine, P("0")), PK("x1 + s", 3));
  EXPECT_THROW(evaluate(affine, P("x1")), UsageError);
}

TEST_F(OneDimFunctional, Differential) {
  auto id = Functional::thick(gen({{{0}, "x1"}}, 1), 3);
  EXPECT_EQ(differential(id, P("y1^3 + s*y1"), P("y1^2")), PK("x1^2", 3));
  auto quad = Functional::thick(gen({{{0}, "x1"}, {{0, 0}, "s"}}), 2);
  EXPECT_EQ(differential(quad, P("y1^2"), P("1")), PK("1", 2));
  Poly d = differential(quad, P("y1^2"), P("y1"));
  EXPECT_EQ(d, PK("x1 + 4*s*lambda*x1 + 16*s^2*lambda^2*x1", 2));
  EXPECT_EQ(d, solve_y_map(quad.source().value(), P("y1^2"), 2).components[0]);
}

TEST(Differential, IsTheTargetFunctionAlongTheFormalMap) {
  Rng rng(31);
  for (int i = 0; i < 15; ++i) {
    ChartPair ch = testing::random_chart(rng, 2, 2);
    GenFunction S = testing::random_genfunction(rng, ch, {3, 2, 2, 0.5});
    const unsigned K = 4;
    auto L = Functional::thick(S, K);
    Poly g = testing::random_g(rng, ch, 3, 3), h = testing::random_g(rng, ch, 3, 3);
    FormalMap y = solve_y_map(S, g, K);
    std::vector<Binding> b;
    for (unsigned a = 0; a < ch.dim_N(); ++a) b.push_back({ch.y(a), y.components[a]});
    ASSERT_EQ(differential(L, g, h), substitute(h.in_ring(ch.ring(K)), b));
  }
}

TEST(Differential, MatchesLinearCoefficientInAProbe) {
  // d/dt L(g + t h) at t = 0, read off as the t-linear part.
  Rng rng(32);
  for (int i = 0; i < 10; ++i) {
    ChartPair ch = testing::random_chart(rng, 2, 2);
    GenFunction S = testing::random_genfunction(rng, ch, {3, 1, 2, 0.5});
    const unsigned K = 3;
    auto L = Functional::thick(S, K);
    Poly g = testing::random_g(rng, ch, 2, 3), h = testing::random_g(rng, ch, 2, 2);
    const Ring r = ch.ring(K);
    const Poly t = Poly::variable(r, ch.probe(0));
    const Poly G = lambda_shift(g.in_ring(r)) + t * h.in_ring(r);
    Poly v = L.apply_graded(G);
    std::vector<Term> linear;
    for (const auto& term : v.terms()) {
      if (term.mono[ch.probe(0)] != 1) continue;
      Term c = term;
      c.mono[ch.probe(0)] = 0;
      linear.push_back(c);
    }
    ASSERT_EQ(Poly::from_terms(r, std::move(linear)), differential(L, g, h));
  }
}

TEST(Homomorphism, HoldsForThickFunctionals) {
  Rng rng(33);
  for (int i = 0; i < 15; ++i) {
    ChartPair ch = testing::random_chart(rng, 2, 2);
    GenFunction S = testing::random_genfunction(rng, ch, {4, 2, 2, 0.4});
    auto L = Functional::thick(S, 4);
    Poly g = testing::random_g(rng, ch, 3, 3);
    Poly h1 = testing::random_g(rng, ch, 3, 2), h2 = testing::random_g(rng, ch, 2, 2);
    auto res = homomorphism_check(L, g, h1, h2, 4);
    ASSERT_TRUE(res.holds) << render_canonical(res.witness);
    ASSERT_TRUE(homomorphism_check(L, g, Poly::constant(ch.base(), 1), h2, 4));
  }
}

TEST_F(OneDimFunctional, HomomorphismFailsForSquaredPointValue) {
  // L(g) = lambda*g(x) + lambda^2*g(0)^2
  std::vector<Poly> at_x{P("x1")}, at_0{P("0")};
  auto pf = product_functional(ch, 3,
                               {ProductTerm{P("1"), {PointForm{{}, at_x}}},
                                ProductTerm{P("1"), {PointForm{{}, at_0}, PointForm{{}, at_0}}}});
  auto res = homomorphism_check(pf, P("y1 + 1"), P("y1"), P("y1 + 2"), 3);
  EXPECT_FALSE(res.holds);
  EXPECT_FALSE(res.witness.is_zero());
  EXPECT_THROW(homomorphism_check(pf, P("y1"), P("y1"), P("y1"), 4), RangeError);
}

TEST_F(OneDimFunctional, SupportMap) {
  auto id = Functional::thick(gen({{{0}, "x1"}}, 1), 2);
  EXPECT_EQ(support_map(id)[0], P("x1"));
  auto S0 = Functional::thick(gen({{{}, "x1^2"}}), 2);
  EXPECT_EQ(support_map(S0)[0], P("0"));
  Rng rng(34);
  ChartPair c2(2, 3);
  GenFunction S = testing::random_genfunction(rng, c2, {3, 2, 2, 0.6});
  auto K0 = support_map(Functional::thick(S, 3));
  for (unsigned a = 0; a < 3; ++a) EXPECT_EQ(K0[a], S.at({a}));
}

TEST_F(OneDimFunctional, PolariseSquareOfPointValue) {
  std::vector<Poly> at_0{P("0")};
  auto L = product_functional(ch, 2, {ProductTerm{P("1"), {PointForm{{}, at_0}, PointForm{{}, at_0}}}});
  EXPECT_EQ(polarise(L, 2, {P("y1 + 2"), P("y1 - 3")}), P("-6"));
  EXPECT_EQ(polarise_by_extraction(L, 2, {P("y1 + 2"), P("y1 - 3")}), P("-6"));
  EXPECT_THROW(polarise(L, 3, {P("1"), P("1"), P("1")}), RangeError);
  EXPECT_THROW(polarise(L, 0, {}), RangeError);
  EXPECT_THROW(polarise(L, 2, {P("1")}), UsageError);
}

TEST_F(OneDimFunctional, PolariseCubicByInclusionExclusion) {
  // L_3(g) = g(x)^2 g'(x): the cubic form is (1/3)(g1 g2 g3' + g1 g3 g2' + g2 g3 g1').
  std::vector<Poly> at_x{P("x1")};
  auto L = product_functional(ch, 3, {ProductTerm{P("1"), {PointForm{{}, at_x}, PointForm{{}, at_x}, PointForm{{0}, at_x}}}});
  Poly g1 = P("y1"), g2 = P("y1^2"), g3 = P("s");
  Poly expect = P("1/3*(x1*x1^2*0 + x1*s*2*x1 + x1^2*s*1)");
  EXPECT_EQ(polarise(L, 3, {g1, g2, g3}), expect);
  EXPECT_EQ(polarise(L, 3, {g1, g1, g1}), grade_component(evaluate(L, g1), 3).in_ring(ch.base()));
}

TEST(Polarise, SymmetricMultilinearAndDiagonal) {
  Rng rng(35);
  for (int i = 0; i < 8; ++i) {
    ChartPair ch = testing::random_chart(rng, 1, 2, {"s"});
    GenFunction S = testing::random_genfunction(rng, ch, {3, 1, 2, 0.6});
    auto L = Functional::thick(S, 3);
    const Ring base = ch.base();
    std::vector<Poly> gs;
    for (int j = 0; j < 3; ++j) gs.push_back(testing::random_g(rng, ch, 2, 2));
    Poly v = polarise(L, 3, gs);
    ASSERT_EQ(polarise(L, 3, {gs[2], gs[0], gs[1]}), v);
    ASSERT_EQ(polarise_by_extraction(L, 3, gs), v);
    Poly extra = testing::random_g(rng, ch, 2, 2);
    Scalar c = testing::random_nonzero_scalar(rng);
    Poly mixed = polarise(L, 3, {gs[0] * c + extra, gs[1], gs[2]});
    ASSERT_EQ(mixed, v * c + polarise(L, 3, {extra, gs[1], gs[2]}));
    ASSERT_EQ(polarise(L, 2, {gs[0], gs[0]}), grade_component(evaluate(L, gs[0]), 2).in_ring(base));
  }
}

TEST_F(OneDimFunctional, AssociateRecoversS) {
  GenFunction S = gen({{{0}, "x1"}, {{0, 0}, "s"}}, 2);
  auto L = Functional::thick(S, 2);
  GenFunction SL = associate(L);
  EXPECT_EQ(SL, S);
  EXPECT_EQ(associate_by_polarisation(L), S);
  // S(x, qb) = L(qb*y) with lambda removed.
  Poly direct = evaluate(L, P("qb1*y1"));
  std::vector<Binding> lam_one{{ch.lambda(), Poly::constant(ch.ring(2), 1)}};
  EXPECT_EQ(substitute(direct, lam_one).in_ring(ch.base()), P("x1*qb1 + s*qb1^2"));

  auto zero = Functional(ch, 3, [](const Poly&, const Ring& r) { return Poly(r); });
  EXPECT_EQ(associate(zero), GenFunction(ch, 3));
}

TEST(Associate, RandomRoundTrip) {
  Rng rng(36);
  for (int i = 0; i < 10; ++i) {
    ChartPair ch = testing::random_chart(rng, 2, 2);
    GenFunction S = testing::random_genfunction(rng, ch, {4, 2, 2, 0.5});
    auto L = Functional::thick(S, 4);
    ASSERT_EQ(associate(L), S);
    ASSERT_EQ(associate_by_polarisation(L), S);
  }
}

TEST(Roundtrip, ThickPassesEveryOrder) {
  Rng rng(37);
  ChartPair ch(2, 2);
  GenFunction S = testing::random_genfunction(rng, ch, {3, 2, 2, 0.6});
  auto L = Functional::thick(S, 3);
  std::vector<Poly> gs;
  for (int j = 0; j < 4; ++j) gs.push_back(testing::random_g(rng, ch, 3, 3));
  auto rep = roundtrip_verify(L, 3, gs);
  EXPECT_TRUE(rep.ok);
  EXPECT_FALSE(rep.first_failure.has_value());
  ASSERT_EQ(rep.orders.size(), 4U);
  EXPECT_EQ(rep.associated, S);
  // Order 1 of the tower is the affine part plus the classical pull-back.
  const Ring r1 = ch.ring(1);
  std::vector<Binding> at_S1;
  for (unsigned a = 0; a < 2; ++a) at_S1.push_back({ch.y(a), S.at({a}).in_ring(r1)});
  Poly expect = S.at({}).in_ring(r1) + ch.lambda_poly(r1) * substitute(gs[0].in_ring(r1), at_S1);
  EXPECT_EQ(evaluate(L, gs[0]).in_ring(r1), expect);
}

TEST_F(OneDimFunctional, CorruptedOrderTwoFailsAtTwo) {
  GenFunction S = gen({{{}, "1"}, {{0}, "x1"}, {{0, 0}, "s"}}, 2);
  auto L = perturbed_thick(S, 3, {Perturbation{2, P("x1")}});
  auto rep = roundtrip_verify(L, 3, {P("y1"), P("y1^2"), P("y1^3 + 1")});
  EXPECT_FALSE(rep.ok);
  ASSERT_TRUE(rep.first_failure.has_value());
  EXPECT_EQ(*rep.first_failure, 2U);
  EXPECT_TRUE(rep.orders[0].ok);
  EXPECT_TRUE(rep.orders[1].ok);
  EXPECT_FALSE(rep.orders[2].ok);
  EXPECT_EQ(rep.orders[2].test_index, 1U);
  EXPECT_FALSE(homomorphism_check(L, P("y1"), P("y1"), P("y1"), 3).holds);
}

TEST_F(OneDimFunctional, OrderDifferenceOfQuadraticAndLinear) {
  auto L1 = Functional::thick(gen({{{0}, "x1"}, {{0, 0}, "s"}}), 3);
  auto L2 = Functional::thick(gen({{{0}, "x1"}}, 1), 3);
  auto T = order_difference(L1, L2, 2, {P("y1"), P("y1^2")});
  ASSERT_EQ(T.size(), 1U);
  EXPECT_EQ(T.at(MultiIndex{0, 0}), P("s"));
  EXPECT_TRUE(order_difference(L1, L1, 2, {P("y1^2")}).empty());
  EXPECT_TRUE(order_difference_identity(L1, L2, 2, T, P("y1^3 - y1")).holds);
  try {
    order_difference(L1, L2, 3, {P("y1^2")});
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.order(), 2U);
  }
}

TEST(OrderDifference, TowerNeighboursGiveTheTensor) {
  Rng rng(38);
  for (int i = 0; i < 5; ++i) {
    ChartPair ch = testing::random_chart(rng, 2, 2);
    GenFunction S = testing::random_genfunction(rng, ch, {3, 2, 2, 0.7});
    for (unsigned k = 1; k <= 3; ++k) {
      auto L1 = Functional::thick(S.truncated(k), 3);
      auto L2 = Functional::thick(S.truncated(k - 1), 3);
      std::vector<Poly> gs{testing::random_g(rng, ch, 3, 3), testing::random_g(rng, ch, 2, 2)};
      auto T = order_difference(L1, L2, k, gs);
      ASSERT_EQ(T, S.tensor(k));
      // Below order 2 the neighbours need not share a support map.
      if (k >= 2) {
        ASSERT_TRUE(order_difference_identity(L1, L2, k, T, testing::random_g(rng, ch, 3, 3)).holds);
      }
    }
  }
}

}  // namespace
}  // namespace thickmorph
