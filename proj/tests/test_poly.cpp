// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "lmlab/matrix.hpp"
#include "lmlab/ring_map.hpp"

using namespace lmlab;

namespace {

RingPtr xyz() { return PolyRing::make({"pi", "x", "y", "z"}); }

Polynomial P(const RingPtr& r, std::string_view s) { return parse_poly(s, r); }

// random polynomial with small integer coefficients
Polynomial random_poly(const RingPtr& r, std::mt19937& rng, int terms = 4, int maxdeg = 2) {
  std::uniform_int_distribution<int> coef(-5, 5), deg(0, maxdeg);
  std::vector<Exponent> e;
  std::vector<Rational> c;
  for (int t = 0; t < terms; ++t) {
    for (std::size_t v = 0; v < r->nvars(); ++v) e.push_back(static_cast<Exponent>(deg(rng)));
    c.emplace_back(coef(rng), 1 + std::abs(coef(rng)));
  }
  for (auto& x : c) x.canonicalize();
  return Polynomial::from_terms(r, e, c);
}

}  // namespace

TEST(Rational, LowestTerms) {
  Rational a(6, -4);
  a.canonicalize();
  EXPECT_EQ(a.get_num(), -3);
  EXPECT_EQ(a.get_den(), 2);
  Rational z(0, 7);
  z.canonicalize();
  EXPECT_EQ(z.get_den(), 1);
}

TEST(Parse, MinorPolynomial) {
  auto r = PolyRing::make({"pi", "z_1_1", "z_1_2", "z_2_1", "z_2_2"});
  auto p = P(r, "z_1_1*z_2_2 - z_1_2*z_2_1");
  EXPECT_EQ(p.size(), 2u);
  // grevlex: z_2_2 is the smallest non-base variable, so the second product leads
  EXPECT_EQ(to_string(p), "-z_1_2*z_2_1 + z_1_1*z_2_2");
}

TEST(Parse, NegativeConstantTimesPi) {
  auto r = xyz();
  auto p = P(r, "-4*pi");
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.coeff(0), -4);
  EXPECT_EQ(p.exps(0)[r->index("pi")], 1);
}

TEST(Parse, SquareExpands) {
  auto r = PolyRing::make({"pi", "x_1_1"});
  auto p = P(r, "(x_1_1 + 1)^2");
  auto x = Polynomial::variable(r, "x_1_1");
  auto one = Polynomial::constant(r, 1);
  EXPECT_EQ(p, x * x + x * Rational(2) + one);
  EXPECT_EQ(to_string(p), "x_1_1^2 + 2*x_1_1 + 1");
}

TEST(Parse, UnaryMinusBindsLooserThanPower) {
  auto r = xyz();
  EXPECT_EQ(P(r, "-x^2"), -(P(r, "x") * P(r, "x")));
  EXPECT_EQ(P(r, "1/2*x - -y"), P(r, "x") * Rational(1, 2) + P(r, "y"));
}

TEST(Parse, Errors) {
  auto r = xyz();
  try {
    P(r, "x + w");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 5u);
    EXPECT_NE(std::string(e.what()).find("'w'"), std::string::npos);
  }
  EXPECT_THROW(P(r, "x + "), ParseError);
  EXPECT_THROW(P(r, "(x"), ParseError);
  EXPECT_THROW(P(r, "x ^ y"), ParseError);
  EXPECT_THROW(P(r, "x / y"), ParseError);
  EXPECT_THROW(P(r, "x )"), ParseError);
}

TEST(Order, PiIsSmallestVariable) {
  auto r = PolyRing::make({"pi", "a", "b"});
  EXPECT_EQ(to_string(P(r, "pi + a + b")), "a + b + pi");
  EXPECT_EQ(to_string(P(r, "pi^2 + a*pi + a^2")), "a^2 + a*pi + pi^2");
  auto lex = PolyRing::make({"pi", "a", "b"}, MonomialOrder::lex());
  EXPECT_EQ(to_string(P(lex, "b^3 + a + pi^5")), "a + b^3 + pi^5");
}

TEST(Order, BlockComparesEliminatedVariablesFirst) {
  auto r = PolyRing::make({"pi", "a", "b", "c"}, MonomialOrder::eliminating({"c"}));
  EXPECT_EQ(to_string(P(r, "a^5 + c")), "c + a^5");
}

TEST(Poly, RingLawsOnRandomSamples) {
  auto r = xyz();
  std::mt19937 rng(11);
  for (int k = 0; k < 50; ++k) {
    auto f = random_poly(r, rng), g = random_poly(r, rng), h = random_poly(r, rng);
    EXPECT_EQ((f * g) * h, f * (g * h));
    EXPECT_EQ((f + g) * h, f * h + g * h);
    EXPECT_EQ(f * (g + h), f * g + f * h);
    EXPECT_EQ(f + g, g + f);
    EXPECT_EQ(f * g, g * f);
    EXPECT_TRUE((f - f).is_zero());
  }
}

TEST(Poly, CanonicalRoundTrip) {
  auto r = xyz();
  std::mt19937 rng(3);
  for (int k = 0; k < 100; ++k) {
    auto f = random_poly(r, rng, 6, 3);
    auto g = P(r, to_string(f));
    EXPECT_EQ(f, g) << to_string(f);
    EXPECT_EQ(to_string(f), to_string(g));
  }
}

TEST(Poly, PrimitiveClearsDenominators) {
  auto r = xyz();
  auto f = P(r, "-1/2*x^2 + 3/4*y - 5/6");
  auto p = f.primitive();
  EXPECT_EQ(to_string(p), "6*x^2 - 9*y + 10");
}

TEST(Substitute, BlowupChartOfBasicScheme) {
  auto src = PolyRing::make({"pi", "u", "v"});
  auto dst = PolyRing::make({"pi", "S", "T", "y"});
  RingMap m(src, dst);
  m.set("u", "-y*T").set("v", "S*y").set("pi", "pi");
  EXPECT_EQ(m(P(src, "u*v - pi")), P(dst, "-S*T*y^2 - pi"));
}

TEST(Substitute, IdentityMap) {
  auto r = xyz();
  auto m = RingMap::identity_on_shared(r, r);
  EXPECT_EQ(m(P(r, "x+y")), P(r, "x+y"));
}

TEST(Substitute, UnmappedVariableIsAnError) {
  auto src = PolyRing::make({"pi", "u", "v"});
  auto dst = PolyRing::make({"pi", "y"});
  RingMap m(src, dst);
  m.set("u", "y");
  EXPECT_THROW(m(P(src, "u*v")), RingError);
  EXPECT_EQ(m(P(src, "u^2")), P(dst, "y^2"));
}

TEST(Substitute, HomomorphismOnRandomPairs) {
  auto src = xyz();
  auto dst = PolyRing::make({"pi", "a", "b"});
  std::mt19937 rng(20);
  RingMap m(src, dst);
  m.set("x", random_poly(dst, rng, 3, 2)).set("y", random_poly(dst, rng, 3, 1));
  m.set("z", random_poly(dst, rng, 2, 2)).set("pi", "pi");
  EXPECT_EQ(m(Polynomial::constant(src, 1)), Polynomial::constant(dst, 1));
  std::uniform_int_distribution<int> pick(-9, 9);
  for (int k = 0; k < 20; ++k) {
    auto f = random_poly(src, rng), g = random_poly(src, rng);
    EXPECT_EQ(m(f * g), m(f) * m(g));
    EXPECT_EQ(m(f + g), m(f) + m(g));
    // evaluation oracle at a random rational point
    std::vector<Rational> pt{Rational(pick(rng), 7), Rational(pick(rng), 3), Rational(pick(rng), 5)};
    for (auto& q : pt) q.canonicalize();
    std::vector<Rational> img;
    for (const auto& v : src->names()) img.push_back(evaluate(*m.image(v), pt));
    EXPECT_EQ(evaluate(m(f * g), pt), evaluate(f, img) * evaluate(g, img));
  }
}

TEST(Jacobian, Examples) {
  auto r = PolyRing::make({"pi", "u", "v", "x", "y"});
  auto j = jacobian({P(r, "u*v - pi")}, {"u", "v", "pi"}, r);
  EXPECT_EQ(j(0, 0), P(r, "v"));
  EXPECT_EQ(j(0, 1), P(r, "u"));
  EXPECT_EQ(j(0, 2), P(r, "-1"));
  auto k = jacobian({P(r, "x^2 + y^2")}, {"x", "y"}, r);
  EXPECT_EQ(k(0, 0), P(r, "2*x"));
  EXPECT_EQ(k(0, 1), P(r, "2*y"));
  EXPECT_THROW(jacobian({P(r, "x")}, {"w"}, r), RingError);
}

TEST(Jacobian, Linear) {
  auto r = xyz();
  std::mt19937 rng(5);
  for (int k = 0; k < 20; ++k) {
    auto f = random_poly(r, rng), g = random_poly(r, rng);
    auto a = jacobian({f + g}, r->names(), r);
    auto b = jacobian({f}, r->names(), r) + jacobian({g}, r->names(), r);
    for (std::size_t c = 0; c < r->nvars(); ++c) EXPECT_EQ(a(0, c), b(0, c));
  }
}

TEST(Minors, Examples) {
  auto r = PolyRing::make({"pi", "a", "b", "c", "d"});
  PolyMatrix m(r, 2, 2);
  m(0, 0) = P(r, "a");
  m(0, 1) = P(r, "b");
  m(1, 0) = P(r, "c");
  m(1, 1) = P(r, "d");
  auto ms = minors(m, 2);
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms[0], P(r, "a*d - b*c"));

  std::vector<std::string> names{"pi"};
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 4; ++j) names.push_back("z_" + std::to_string(i) + "_" + std::to_string(j));
  auto rz = PolyRing::make(names);
  EXPECT_TRUE(minors(PolyMatrix::generic(rz, "z", 1, 4), 2).empty());
  auto six = minors(PolyMatrix::generic(rz, "z", 2, 4), 2);
  ASSERT_EQ(six.size(), 6u);
  EXPECT_EQ(six[0], P(rz, "z_1_1*z_2_2 - z_1_2*z_2_1"));
  EXPECT_EQ(six[5], P(rz, "z_1_3*z_2_4 - z_1_4*z_2_3"));
  EXPECT_THROW(minors(PolyMatrix::generic(rz, "z", 2, 4), 5), RingError);
}

TEST(Minors, DeterminantOfThreeByThree) {
  auto r = PolyRing::make({"pi", "a"});
  auto m = PolyMatrix::constant(r, {{2, 0, 1}, {1, 3, 2}, {1, 1, 1}});
  EXPECT_EQ(determinant(m), Polynomial::constant(r, 0));
  auto j = PolyMatrix::antidiagonal(r, 3);
  EXPECT_EQ(determinant(j), Polynomial::constant(r, -1));
}
