#include <gtest/gtest.h>

#include <random>

#include "itergcd/errors.hpp"
#include "itergcd/iterate_solver.hpp"
#include "itergcd/polygcd.hpp"

namespace itergcd {
namespace {

Poly P(const std::string& s) { return parse_poly(s); }
RationalFunction R(const std::string& s) { return parse_ratfunc(s); }

TEST(CommonFactor, Examples) {
  EXPECT_EQ(common_factor(P("x^2-1"), P("x^2-2*x+1")), P("x-1"));
  EXPECT_EQ(common_factor(P("x^8-x"), P("x^9-x")), P("x^2-x"));
  EXPECT_EQ(common_factor(P("3*x^2+6"), Poly()), P("x^2+2"));
  EXPECT_THROW(common_factor(Poly(), Poly()), Error);
}

// Rational roots by the rational root theorem over divisors of the integer coefficients.
std::vector<Rat> roots_by_enumeration(const Poly& f) {
  auto c = primitive_integer(f);
  size_t lo = 0;
  std::vector<Rat> out;
  while (c[lo] == 0) ++lo;
  if (lo > 0) out.push_back(0);
  const u64 a0 = to_u64(abs(c[lo])), an = to_u64(abs(c.back()));
  for (u64 p : divisors_u64(a0))
    for (u64 q : divisors_u64(an))
      for (int s : {-1, 1}) {
        Rat r(s * static_cast<long>(p), static_cast<long>(q));
        r.canonicalize();
        if (f.eval(r) == 0 && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
      }
  std::sort(out.begin(), out.end());
  return out;
}

Poly random_poly(std::mt19937_64& rng, int deg) {
  Poly p = Poly::constant(1 + static_cast<long>(rng() % 3));
  for (int i = 0; i < deg; ++i) {
    // mostly linear factors with small rational roots, sometimes an irreducible quadratic
    if (rng() % 4 == 0)
      p = p * P("x^2+" + std::to_string(1 + rng() % 5));
    else
      p = p * Poly(std::vector<Rat>{Rat(static_cast<long>(rng() % 9) - 4), Rat(1 + static_cast<long>(rng() % 3))});
  }
  return p;
}

TEST(CommonFactor, DividesBothAndKeepsCommonRoots) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 150; ++it) {
    const Poly shared = random_poly(rng, static_cast<int>(rng() % 3));
    const Poly a = shared * random_poly(rng, 1 + static_cast<int>(rng() % 4));
    const Poly b = shared * random_poly(rng, 1 + static_cast<int>(rng() % 4));
    const Poly g = common_factor(a, b, it);
    ASSERT_TRUE(divides_exactly(g, a));
    ASSERT_TRUE(divides_exactly(g, b));
    ASSERT_EQ(g, poly_gcd_euclid(a, b));
    ASSERT_EQ(g, subresultant_gcd(a, b));
    const auto ra = roots_by_enumeration(a);
    for (const Rat& r : ra)
      if (b.eval(r) == 0) {
        ASSERT_EQ(g.eval(r), 0);
      }
    ASSERT_EQ(rational_roots(a), ra);
  }
}

TEST(CommonFactor, ModularAgreesWithSubresultantOnIterates) {
  const Poly f = P("x^2-x+1"), g = P("x^2+1");
  for (u64 n = 1; n <= 5; ++n) {
    const Poly a = poly_iterate(f, n) - P("x^3"), b = poly_iterate(g, n) - P("x^3");
    ASSERT_EQ(common_factor(a, b), subresultant_gcd(a, b)) << n;
  }
}

TEST(GridScan, DoublingAgainstTranslation) {
  const auto f = MapSpec::from_ratfunc(R("2*x")), g = MapSpec::from_ratfunc(R("x+1"));
  auto rep = grid_scan(f, g, R("x^2"), R("x^2"), 3, 60);
  ASSERT_EQ(rep.hits.size(), 3u);
  const std::vector<std::pair<u64, u64>> want = {{1, 2}, {2, 12}, {3, 56}};
  for (size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(rep.hits[i].m, want[i].first);
    EXPECT_EQ(rep.hits[i].n, want[i].second);
    EXPECT_EQ(rep.hits[i].roots, std::vector<Rat>{Rat(2 << i)});
  }
}

TEST(GridScan, DiagonalHitsForSquareCubeTargets) {
  const auto f = MapSpec::from_ratfunc(R("2*x")), g = MapSpec::from_ratfunc(R("4*x"));
  auto rep = grid_scan(f, g, R("x^2"), R("x^3"), 8, 8);
  for (const auto& h : rep.hits) {
    EXPECT_EQ(h.m, h.n);
    EXPECT_EQ(h.roots, std::vector<Rat>{Rat(1u << h.m)});
  }
  EXPECT_EQ(rep.hits.size(), 8u);
  EXPECT_EQ(rep.stationary_roots, std::vector<Rat>{Rat(0)});
}

TEST(GridScan, DegenerateTargetExcluded) {
  const auto f = MapSpec::from_ratfunc(R("2*x+1")), g = MapSpec::from_ratfunc(R("3*x"));
  auto rep = grid_scan(f, g, R("2*x+1"), R("x^2"), 4, 4);
  EXPECT_EQ(rep.degenerate_m, std::vector<u64>{1});
  for (const auto& h : rep.hits) EXPECT_NE(h.m, 1u);
}

TEST(GridScan, ReportedSolutionsSatisfyBothEquations) {
  struct Case {
    const char *f, *g, *c1, *c2;
  };
  for (const Case& c : {Case{"2*x+1", "x/(x+3)", "x^2-2", "(x+1)/(x-1)"}, Case{"x^2-1", "-x+3", "x", "x^2"},
                        Case{"3*x", "x+2", "x^2+x", "x^3"}, Case{"x^2", "x^3", "x", "x"}}) {
    const auto f = MapSpec::from_ratfunc(R(c.f)), g = MapSpec::from_ratfunc(R(c.g));
    const RationalFunction c1 = R(c.c1), c2 = R(c.c2);
    auto rep = grid_scan(f, g, c1, c2, 4, 4);
    for (const auto& h : rep.hits) {
      for (const Rat& l : h.roots) {
        ASSERT_EQ(ratfunc_eval(f.iterate(h.m), l), ratfunc_eval(c1, l)) << c.f << " m=" << h.m;
        ASSERT_EQ(ratfunc_eval(g.iterate(h.n), l), ratfunc_eval(c2, l)) << c.g << " n=" << h.n;
      }
      ASSERT_TRUE(divides_exactly(h.factor, *cleared_difference(f.iterate(h.m), c1)));
      ASSERT_TRUE(divides_exactly(h.factor, *cleared_difference(g.iterate(h.n), c2)));
    }
    for (const Rat& l : rep.stationary_roots) {
      ASSERT_EQ(ratfunc_eval(f.iterate(1), l), ratfunc_eval(c1, l));
      ASSERT_EQ(ratfunc_eval(g.iterate(1), l), ratfunc_eval(c2, l));
    }
  }
}

TEST(GridScan, DenominatorZerosAreNotSolutions) {
  // x = 1 makes both numerators vanish but is a pole of both targets
  const auto f = MapSpec::from_ratfunc(R("2*x-1")), g = MapSpec::from_ratfunc(R("x+1"));
  auto rep = grid_scan(f, g, R("(x^2-1)/(x-1)^2"), R("1/(x-1)"), 3, 3);
  for (const auto& h : rep.hits)
    for (const Rat& l : h.roots) EXPECT_NE(l, 1);
  for (const Rat& l : rep.distinct_rational_solutions) EXPECT_NE(l, 1);
}

TEST(DmlScan, Examples) {
  auto a = dml_scan(P("x^2"), P("x^2"), P("x+1"), 8);
  for (u64 n = 1; n <= 8; ++n) EXPECT_TRUE(a.solvable[n]) << n;

  auto b = dml_scan(P("2*x"), P("x+1"), P("x^2"), 20);
  for (u64 n = 1; n <= 20; ++n) EXPECT_FALSE(b.solvable[n]) << n;

  auto c = dml_scan(P("-x^2"), P("x^4"), P("1"), 6);
  EXPECT_EQ(c.mode, DmlMode::FastPathPower);
  ASSERT_TRUE(c.detected.has_value());
  EXPECT_TRUE(c.detected->certified);
  for (u64 n = 1; n <= 6; ++n) EXPECT_TRUE(c.solvable[n]) << n;
}

TEST(DmlScan, FastPathsAgreeWithExactGcd) {
  struct Case {
    const char *f, *g, *c;
  };
  for (const Case& t : {Case{"-x^2", "x^4", "1"}, Case{"x^2", "-x^3", "-1"}, Case{"x^3", "x^3", "-x"},
                        Case{"2*x^2-1", "-2*x^2+1", "-x"}, Case{"4*x^3-3*x", "2*x^2-1", "x"}}) {
    DmlScanOptions fast, exact;
    exact.use_fast_path = false;
    exact.degree_cap = 1u << 12;
    auto a = dml_scan(P(t.f), P(t.g), P(t.c), 5, fast);
    auto b = dml_scan(P(t.f), P(t.g), P(t.c), 5, exact);
    EXPECT_NE(a.mode, DmlMode::Exact) << t.f;
    for (u64 n = 0; n <= std::min(a.horizon, b.horizon); ++n) {
      if (!b.verified[n]) continue;
      ASSERT_EQ(a.solvable[n], b.solvable[n]) << t.f << " " << t.g << " " << t.c << " n=" << n;
    }
  }
}

TEST(DmlScan, SolvabilityReadsGcdDegree) {
  auto r = dml_scan(P("x^2+1"), P("x^2-1"), P("x"), 4, {});
  EXPECT_EQ(r.mode == DmlMode::Exact || r.mode == DmlMode::ModularMonteCarlo, true);
  for (u64 n = 1; n <= r.horizon; ++n) {
    if (r.gcd_degree[n] < 0) continue;
    EXPECT_EQ(r.solvable[n], r.gcd_degree[n] >= 1);
  }
  if (r.detected) {
    EXPECT_FALSE(r.detected->certified);
  }
}

TEST(DmlScan, NormalFormRecognition) {
  EXPECT_EQ(as_signed_monomial(P("-x^3")), (std::optional<std::pair<int, u64>>{{-1, 3}}));
  EXPECT_EQ(as_signed_monomial(P("2*x^3")), std::nullopt);
  EXPECT_EQ(as_signed_chebyshev(P("-4*x^3+3*x")), (std::optional<std::pair<int, u64>>{{-1, 3}}));
  EXPECT_EQ(as_signed_chebyshev(P("x")), (std::optional<std::pair<int, u64>>{{1, 1}}));
  EXPECT_EQ(as_signed_chebyshev(P("x^2")), std::nullopt);
}

TEST(Finiteness, GenericPairStaysBounded) {
  auto r = finiteness_probe(MobiusMap::affine(2, 1), MobiusMap::affine(3, 0), R("x^2"), 30);
  EXPECT_EQ(r.cls, FinitenessClass::Generic);
  EXPECT_TRUE(r.predicted_finite);
  EXPECT_TRUE(r.consistent);
  for (long s : r.solutions_per_n) EXPECT_LE(s, 2);
}

TEST(Finiteness, ExceptionalPair) {
  auto r = finiteness_probe(MobiusMap::affine(2, 0), MobiusMap(1, 0, 1, Rat(1, 2)), R("x^2"), 10);
  EXPECT_EQ(r.cls, FinitenessClass::ExceptionalMobiusPair);
  EXPECT_FALSE(r.predicted_finite);
}

TEST(Finiteness, RejectsDependentPair) {
  try {
    finiteness_probe(MobiusMap::affine(2, 1), MobiusMap::affine(2, 1), R("x^2"), 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFree);
  }
}

}  // namespace
}  // namespace itergcd
