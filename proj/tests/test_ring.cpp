#include <gtest/gtest.h>

#include "support/random_instances.hpp"
#include "thickmorph/parse.hpp"
#include "thickmorph/ring.hpp"

namespace thickmorph {
namespace {

std::shared_ptr<const VarTable> small_table() {
  return std::make_shared<const VarTable>(std::vector<Symbol>{{"x", SymbolClass::x},
                                                              {"y", SymbolClass::y},
                                                              {"q1", SymbolClass::q},
                                                              {"q2", SymbolClass::q},
                                                              {"lambda", SymbolClass::lambda},
                                                              {"eps", SymbolClass::epsilon},
                                                              {"s", SymbolClass::param}});
}

class RingTest : public ::testing::Test {
 protected:
  Ring ring{small_table()};
  Poly P(const char* s) const { return parse_poly(s, ring); }
  Poly P(const char* s, const Ring& r) const { return parse_poly(s, r); }
};

TEST_F(RingTest, VarTableRejectsBadTables) {
  EXPECT_THROW(VarTable({{"x", SymbolClass::x}}), UsageError);  // no lambda
  EXPECT_THROW(VarTable({{"x", SymbolClass::x}, {"x", SymbolClass::y}, {"l", SymbolClass::lambda}}), UsageError);
  EXPECT_THROW(VarTable({{"l", SymbolClass::lambda}, {"m", SymbolClass::lambda}}), UsageError);
  EXPECT_THROW(VarTable({{"l", SymbolClass::lambda}, {"e", SymbolClass::epsilon}, {"f", SymbolClass::epsilon}}),
               UsageError);
  EXPECT_THROW(VarTable({{"1x", SymbolClass::x}, {"l", SymbolClass::lambda}}), UsageError);
}

TEST_F(RingTest, AdditiveInverse) { EXPECT_TRUE((P("x") - P("x")).is_zero()); }

TEST_F(RingTest, EpsilonSquaresToZero) { EXPECT_EQ(P("1+eps") * P("1+eps"), P("1+2*eps")); }

TEST_F(RingTest, LambdaCapTruncates) {
  Ring r1 = ring.with_lambda_cap(1);
  EXPECT_TRUE((P("lambda*x", r1) * P("lambda*x", r1)).is_zero());
  EXPECT_EQ(P("(1+lambda)^3", ring.with_lambda_cap(2)), P("1+3*lambda+3*lambda^2", ring.with_lambda_cap(2)));
}

TEST_F(RingTest, QDegreeCapTruncates) {
  Ring r = ring.with_caps(Caps{kUnbounded, 2, kUnbounded});
  EXPECT_EQ(P("(q1+q2+x)^3", r), P("3*q1^2*x + 6*q1*q2*x + 3*q2^2*x + 3*q1*x^2 + 3*q2*x^2 + x^3", r));
}

TEST_F(RingTest, MismatchedRingsAreUsageErrors) {
  Ring other(small_table());  // equal table, different object: fine
  EXPECT_NO_THROW(P("x") + P("x", other));
  auto t2 = std::make_shared<const VarTable>(std::vector<Symbol>{{"x", SymbolClass::x}, {"lambda", SymbolClass::lambda}});
  EXPECT_THROW(P("x") * parse_poly("x", Ring(t2)), UsageError);
  EXPECT_THROW(P("x") + P("x", ring.with_lambda_cap(1)), UsageError);
}

TEST_F(RingTest, Partial) {
  EXPECT_EQ(partial(P("q1^2"), "q1"), P("2*q1"));
  EXPECT_EQ(partial(P("x*y"), "y"), P("x"));
  EXPECT_TRUE(partial(P("7/3"), "x").is_zero());
  EXPECT_THROW(partial(P("x"), "zz"), UsageError);
}

TEST_F(RingTest, Substitute) {
  const Ring r1 = ring.with_lambda_cap(1);
  const auto& v = ring.vars();
  EXPECT_EQ(substitute(P("y^2", r1), {{v.index("y"), P("x+lambda", r1)}}), P("x^2+2*lambda*x", r1));

  Poly a = P("3*x*y^2 + s*q1 - eps");
  EXPECT_EQ(substitute(a, {{v.index("y"), P("y")}, {v.index("x"), P("x")}}), a);

  // q1 -> d(y^2)/dy, then y -> x.
  Poly step = substitute(P("q1"), {{v.index("q1"), partial(P("y^2"), "y")}});
  EXPECT_EQ(substitute(step, {{v.index("y"), P("x")}}), P("2*x"));

  // Simultaneous, not sequential.
  EXPECT_EQ(substitute(P("x + 2*y"), {{v.index("x"), P("y")}, {v.index("y"), P("x")}}), P("y + 2*x"));
}

TEST_F(RingTest, GradeComponent) {
  const Ring r2 = ring.with_lambda_cap(2);
  Poly a = P("lambda*x^2 + 4*s*lambda^2*x^2", r2);
  EXPECT_EQ(grade_component(a, 2), P("4*s*x^2", r2));
  EXPECT_TRUE(grade_component(a, 0).is_zero());
  EXPECT_THROW(grade_component(a, 3), RangeError);
}

TEST_F(RingTest, EpsilonPart) {
  EXPECT_EQ(epsilon_part(P("1+2*eps")), P("2"));
  EXPECT_TRUE(epsilon_part(P("x+lambda")).is_zero());
  EXPECT_EQ(epsilon_part(P("eps*(x+lambda)")), P("x+lambda"));
  EXPECT_EQ(epsilon_free(P("x + eps*y")), P("x"));
  auto no_eps = std::make_shared<const VarTable>(std::vector<Symbol>{{"x", SymbolClass::x}, {"l", SymbolClass::lambda}});
  EXPECT_THROW(epsilon_part(parse_poly("x", Ring(no_eps))), UsageError);
}

TEST_F(RingTest, Proportionality) {
  EXPECT_EQ(proportionality(P("x+y"), P("6*x+6*y")), std::optional<Scalar>(6));
  EXPECT_EQ(proportionality(P("x+y"), P("6*x+5*y")), std::nullopt);
  EXPECT_EQ(proportionality(P("0"), P("x")), std::nullopt);
}

// ---------------------------------------------------------------------------
// Properties on random polynomials (ring laws modulo caps).
// ---------------------------------------------------------------------------

class RingPropertyTest : public RingTest {
 protected:
  testing::Rng rng{20261014};
  Ring capped = ring.with_caps(Caps{3, 3, kUnbounded});
  std::vector<std::size_t> all{0, 1, 2, 3, 4, 5, 6};

  Poly random() { return testing::random_poly(rng, capped, all, 4, 5); }
};

TEST_F(RingPropertyTest, RingLaws) {
  for (int i = 0; i < 200; ++i) {
    Poly a = random(), b = random(), c = random();
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_TRUE((a - a).is_zero());
  }
}

TEST_F(RingPropertyTest, MixedPartialsCommute) {
  for (int i = 0; i < 100; ++i) {
    Poly a = testing::random_poly(rng, ring, all, 5, 6);
    for (std::size_t u : all) {
      for (std::size_t v : all) ASSERT_EQ(partial(partial(a, u), v), partial(partial(a, v), u));
    }
  }
}

// Bindings must not lower the capped gradings (q-degree, lambda), otherwise
// terms dropped before substitution would have survived after it.
TEST_F(RingPropertyTest, SubstituteIsRingMorphism) {
  const auto& v = ring.vars();
  const Poly q2 = Poly::variable(capped, "q2");
  for (int i = 0; i < 100; ++i) {
    Poly a = random(), b = random();
    std::vector<Binding> bind{{v.index("y"), random()}, {v.index("q1"), random() * q2}, {v.index("s"), random()}};
    ASSERT_EQ(substitute(a * b, bind), substitute(a, bind) * substitute(b, bind));
    ASSERT_EQ(substitute(a + b, bind), substitute(a, bind) + substitute(b, bind));
  }
}

TEST_F(RingPropertyTest, GradeComponentsReassemble) {
  Poly lam = Poly::variable(capped, "lambda");
  for (int i = 0; i < 200; ++i) {
    Poly a = random();
    Poly re(capped);
    for (unsigned k = 0; k <= 3; ++k) re += lam.pow(k) * grade_component(a, k);
    ASSERT_EQ(re, a);
  }
}

}  // namespace
}  // namespace thickmorph
