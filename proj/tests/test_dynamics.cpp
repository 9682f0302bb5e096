#include <gtest/gtest.h>

#include <random>

#include "itergcd/errors.hpp"
#include "itergcd/mobius.hpp"
#include "itergcd/poly.hpp"
#include "itergcd/polygcd.hpp"
#include "itergcd/ratfunc.hpp"

namespace itergcd {
namespace {

Poly P(const std::string& s) { return parse_poly(s); }
RationalFunction R(const std::string& s) { return parse_ratfunc(s); }

// mpq_class(n, d) keeps n/d as given; every library entry point expects lowest terms
Rat q(long n, long d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

TEST(Mobius, IterateExamples) {
  const MobiusMap f = MobiusMap::affine(2, 1);
  EXPECT_EQ(mobius_iterate(f, 3), MobiusMap::affine(8, 7));
  EXPECT_EQ(mobius_iterate(f, 1), f);
  EXPECT_EQ(mobius_iterate(f, 0), MobiusMap::identity());
  const MobiusMap g(1, 0, 1, 2);
  EXPECT_EQ(mobius_iterate(g, 2), MobiusMap(1, 0, 3, 4));
  EXPECT_EQ(mobius_iterate(g, 2).to_ratfunc(), R("x/(3*x+4)"));
}

TEST(Mobius, ClosedForms) {
  for (long a : {-3L, -2L, 2L, 5L}) {
    const Rat alpha(a), beta(3, 7);
    for (u64 n = 0; n <= 20; ++n) {
      const Rat an = rpow(alpha, static_cast<long>(n));
      EXPECT_EQ(mobius_iterate(MobiusMap::affine(alpha, beta), n),
                MobiusMap::affine(an, beta * (1 - an) / (1 - alpha)));
    }
  }
  for (u64 n = 0; n <= 20; ++n) EXPECT_EQ(mobius_iterate(MobiusMap::affine(1, Rat(2, 5)), n), MobiusMap::affine(1, q(2 * static_cast<long>(n), 5)));
  const Rat gamma(3, 2), delta(-4, 3);
  for (u64 n = 1; n <= 20; ++n) {
    const Rat dn = rpow(delta, static_cast<long>(n));
    EXPECT_EQ(mobius_iterate(MobiusMap(1, 0, gamma, delta), n), MobiusMap(1, 0, gamma * (1 - dn) / (1 - delta), dn));
  }
}

TEST(Mobius, CanonicalScalingAndInverse) {
  EXPECT_EQ(MobiusMap(2, 4, 0, 6), MobiusMap(1, 2, 0, 3));
  EXPECT_EQ(MobiusMap(0, 3, 6, 9), MobiusMap(0, 1, 2, 3));
  const MobiusMap f(2, -1, 3, 5);
  EXPECT_EQ(f.compose(f.inverse()), MobiusMap::identity());
  EXPECT_THROW(MobiusMap(1, 2, 2, 4), Error);
  EXPECT_THROW(MobiusMap(1, 0, 1, 0).eval(0), Error);
}

MobiusMap random_mobius(std::mt19937_64& rng) {
  auto coef = [&] { return q(static_cast<long>(rng() % 15) - 7, 1 + static_cast<long>(rng() % 4)); };
  for (;;) {
    Rat a = coef(), b = coef(), c = coef(), d = coef();
    if (a * d - b * c != 0) return MobiusMap(a, b, c, d);
  }
}

TEST(Mobius, IterateIsAHomomorphism) {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 10; ++it) {
    const MobiusMap f = random_mobius(rng);
    for (u64 m = 0; m <= 32; m += 3)
      for (u64 n = 0; n <= 32; n += 5)
        ASSERT_EQ(mobius_iterate(f, m + n), mobius_iterate(f, m).compose(mobius_iterate(f, n)));
  }
}

TEST(Mobius, IterateMatchesRepeatedComposition) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 10; ++it) {
    const MobiusMap f = random_mobius(rng);
    const RationalFunction fr = f.to_ratfunc();
    RationalFunction acc = RationalFunction::x();
    for (u64 n = 1; n <= 64; ++n) {
      acc = ratfunc_compose(fr, acc);
      ASSERT_EQ(mobius_iterate(f, n).to_ratfunc(), acc) << "n=" << n;
    }
  }
}

TEST(Mobius, WordRelations) {
  // commuting maps: fg = gf
  auto rel = find_word_relation(MobiusMap::affine(2, 0), MobiusMap::affine(3, 0), 4);
  ASSERT_TRUE(rel.has_value());
  EXPECT_NE(rel->first, rel->second);
  EXPECT_FALSE(find_word_relation(MobiusMap::affine(2, 1), MobiusMap::affine(3, 0), 6).has_value());
}

TEST(Poly, ComposeAndIterate) {
  EXPECT_EQ(poly_compose(P("x^2+1"), P("x-1")), P("x^2-2*x+2"));
  EXPECT_EQ(poly_iterate(P("x^2"), 3), P("x^8"));
  EXPECT_EQ(poly_iterate(P("2*x+1"), 3), P("8*x+7"));
  EXPECT_EQ(poly_iterate(P("x^3+x"), 0), Poly::x());
  EXPECT_THROW(poly_iterate(P("x^2"), 13), Error);
}

TEST(Poly, IterateDegreeIsExact) {
  for (const char* s : {"x^2+1", "3*x^3-x", "-x^2+x/2", "x^5"}) {
    const Poly f = P(s);
    u64 deg = 1;
    for (u64 n = 0; deg <= 4096; ++n, deg *= static_cast<u64>(f.degree()))
      ASSERT_EQ(poly_iterate(f, n).degree(), static_cast<long>(deg)) << s << " n=" << n;
  }
}

TEST(Poly, DivisionAndGcd) {
  auto [q, r] = divmod(P("x^3-1"), P("x-1"));
  EXPECT_EQ(q, P("x^2+x+1"));
  EXPECT_TRUE(r.is_zero());
  EXPECT_FALSE(divides_exactly(P("x-2"), P("x^3-1")));
  EXPECT_EQ(poly_gcd_euclid(P("x^2-1"), P("x^2-2*x+1")), P("x-1"));
  EXPECT_EQ(squarefree_part(P("(x-1)^3*(x+2)^2")), P("(x-1)*(x+2)"));
}

TEST(Chebyshev, Examples) {
  EXPECT_EQ(chebyshev(0), Poly::x());
  EXPECT_EQ(chebyshev(1), Poly::x());
  EXPECT_EQ(chebyshev(2), P("2*x^2-1"));
  EXPECT_EQ(chebyshev(3), P("4*x^3-3*x"));
}

TEST(Chebyshev, Semiconjugacy) {
  const RationalFunction pi = R("(x+1/x)/2");
  for (u64 d = 1; d <= 16; ++d) {
    const RationalFunction lhs = ratfunc_compose(RationalFunction(chebyshev(d)), pi);
    const RationalFunction rhs = ratfunc_compose(pi, RationalFunction(Poly::monomial(1, d)));
    ASSERT_EQ(lhs, rhs) << "d=" << d;
  }
}

TEST(Chebyshev, CompositionLaw) {
  for (u64 a = 1; a <= 5; ++a)
    for (u64 b = 1; b <= 5; ++b) EXPECT_EQ(poly_compose(chebyshev(a), chebyshev(b)), chebyshev(a * b));
}

TEST(RationalFunction, Examples) {
  EXPECT_EQ(ratfunc_eval(R("x/(x+1)"), 1), Rat(1, 2));
  EXPECT_EQ(ratfunc_compose(R("x^2"), R("(x+1)/x")), R("(x+1)^2/x^2"));
  const RationalFunction n = ratfunc_normalize(P("2*x+2"), P("2*x"));
  EXPECT_EQ(n.num(), P("x+1"));
  EXPECT_EQ(n.den(), P("x"));
}

TEST(RationalFunction, PoleErrors) {
  try {
    ratfunc_eval(R("1/(x-3)"), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PoleError);
  }
  EXPECT_THROW(pow(RationalFunction(), -1), Error);
}

TEST(RationalFunction, PrinterRoundTrip) {
  std::mt19937_64 rng(3);
  auto coeff = [&] { return q(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 6)); };
  for (int it = 0; it < 300; ++it) {
    std::vector<Rat> a(1 + rng() % 5), b(1 + rng() % 4);
    for (auto& c : a) c = coeff();
    for (auto& c : b) c = coeff();
    Poly den(b);
    if (den.is_zero()) continue;
    const RationalFunction r = ratfunc_normalize(Poly(a), den);
    const std::string s = r.to_string();
    ASSERT_EQ(parse_ratfunc(s), r) << s;
    ASSERT_EQ(parse_ratfunc(s).to_string(), s);
  }
}

TEST(RationalFunction, LowestTermsWithMonicDenominator) {
  const RationalFunction r = R("(3*x^2-3)/(6*x-6)");
  EXPECT_EQ(r, R("x/2+1/2"));
  const RationalFunction s = R("(x+1)/(2*x^2)");
  EXPECT_EQ(s.den().lc(), 1);
  EXPECT_EQ(poly_gcd_euclid(s.num(), s.den()), Poly::constant(1));
}

}  // namespace
}  // namespace itergcd
