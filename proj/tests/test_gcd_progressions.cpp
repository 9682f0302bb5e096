#include <gtest/gtest.h>

#include "itergcd/errors.hpp"
#include "itergcd/gcd_progressions.hpp"

namespace itergcd {
namespace {

GcdSetInstance inst(long d1, long d2, long d3, long d4, long a, long b, u64 k) {
  return GcdSetInstance{d1, d2, d3, d4, a, b, k};
}

// Direct evaluation with gcd(0, x) = |x| and 0 | 0, written independently of the library oracle.
bool member(const GcdSetInstance& s, u64 n) {
  const Int A = ipow(s.d1, n) - s.d3, B = ipow(s.d2, n) - s.d4;
  Int g;
  mpz_gcd(g.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
  const Int lhs = g * Int(static_cast<unsigned long>(s.k));
  const Int rhs = s.b * A - s.a * B;
  if (lhs == 0) return rhs == 0;
  return mpz_divisible_p(rhs.get_mpz_t(), lhs.get_mpz_t()) != 0;
}

void expect_matches_direct(const GcdSetInstance& s, const EPS& set, u64 H) {
  for (u64 n = 0; n < H; ++n) ASSERT_EQ(set.contains(n), member(s, n)) << s.to_string() << " n=" << n;
}

TEST(GcdBruteforce, Examples) {
  auto all7 = gcd_set_bruteforce(inst(2, 2, 0, 0, 1, 1, 7), 10);
  EXPECT_EQ(std::count(all7.begin(), all7.end(), true), 10);

  auto odd = gcd_set_bruteforce(inst(2, 3, 1, 1, 0, 1, 2), 200);
  EXPECT_TRUE(odd[0]);
  for (u64 n = 1; n < 200; ++n) EXPECT_FALSE(odd[n]);

  auto even = gcd_set_bruteforce(inst(3, 5, 1, 1, 1, 1, 2), 200);
  for (u64 n = 0; n < 200; ++n) EXPECT_EQ(even[n], n % 2 == 0);
}

TEST(GcdBruteforce, AgreesWithDirectEvaluation) {
  for (long d1 : {-4L, 2L, 3L, 6L})
    for (long d2 : {-3L, 2L, 5L})
      for (long d3 : {-2L, 0L, 1L, 4L})
        for (u64 k : {1u, 4u, 6u}) {
          const auto s = inst(d1, d2, d3, d3 + 1, 2, 1, k);
          const auto w = gcd_set_bruteforce(s, 60);
          for (u64 n = 0; n < 60; ++n) ASSERT_EQ(w[n], member(s, n)) << s.to_string() << " n=" << n;
        }
}

TEST(GcdBruteforce, Budget) { EXPECT_THROW(gcd_set_bruteforce(inst(1000, 999, 1, 1, 1, 1, 2), 100000), Error); }

TEST(MultiplicativeDependence, Examples) {
  EXPECT_EQ(multiplicative_dependence(3, 3), std::optional<u64>(1));
  EXPECT_EQ(multiplicative_dependence(3, -3), std::optional<u64>(2));
  EXPECT_EQ(multiplicative_dependence(3, 5), std::nullopt);
  EXPECT_EQ(multiplicative_dependence(0, 0), std::optional<u64>(1));
}

TEST(CaseClassify, Examples) {
  EXPECT_EQ(case_classify(2, inst(2, 3, 7, 7, 1, 1, 2)), CaseTag::CaseI);
  EXPECT_EQ(case_classify(2, inst(2, 3, 1, 1, 1, 1, 2)), CaseTag::CaseIIRootOfUnity);
  EXPECT_EQ(case_classify(2, inst(2, 3, -1, -1, 1, 1, 2)), CaseTag::CaseIIRootOfUnity);
  EXPECT_EQ(case_classify(2, inst(2, 3, 0, 0, 1, 1, 2)), CaseTag::CaseIIIZero);
  EXPECT_EQ(case_classify(2, inst(0, 3, 7, 7, 1, 1, 2)), CaseTag::ZeroOrUnitBase);
  EXPECT_EQ(case_classify(2, inst(5, -5, 7, 7, 1, 1, 2)), CaseTag::DegenerateDependence);
}

TEST(GcdValuationBound, Examples) {
  EXPECT_EQ(gcd_valuation_bound(2, 3, 5, 7).ell, 1);
  EXPECT_EQ(gcd_valuation_bound(3, 2, 5, 2).ell, 1);
  EXPECT_EQ(gcd_valuation_bound(5, 2, 3, 7).ell, 0);
}

TEST(GcdValuationBound, IsTheMaximumOverAWindow) {
  for (u64 p : {2u, 3u, 5u, 7u})
    for (long d1 : {2L, 3L, 6L})
      for (long d2 : {5L, 7L, 10L})
        for (long d3 : {-3L, 2L, 3L, 7L, 9L}) {
          const long ell = gcd_valuation_bound(p, d1, d2, d3).ell;
          long seen = 0;
          for (u64 n = 0; n < 120; ++n) {
            const Int A = ipow(Int(d1), n) - d3, B = ipow(Int(d2), n) - d3;
            seen = std::max(seen, std::min(valuation(A, p), valuation(B, p)));
          }
          EXPECT_EQ(seen, ell) << p << " " << d1 << " " << d2 << " " << d3;
        }
}

TEST(GcdValuationBound, RejectsOutOfCaseInput) {
  EXPECT_THROW(gcd_valuation_bound(2, 3, 5, 1), Error);
  EXPECT_THROW(gcd_valuation_bound(2, 3, 3, 7), Error);
}

TEST(CaseOneStrata, PartitionN) {
  for (u64 p : {2u, 3u, 5u})
    for (long d3 : {2L, 7L, -5L}) {
      const auto strata = case_one_strata(p, 3, 10, d3);
      EPS u = EPS::empty();
      for (size_t i = 0; i < strata.size(); ++i) {
        for (size_t j = i + 1; j < strata.size(); ++j) EXPECT_TRUE(eps_intersect(strata[i], strata[j]).is_empty());
        u = eps_union(u, strata[i]);
        for (u64 n = 0; n < 100; ++n) {
          if (!strata[i].contains(n)) continue;
          const long v = std::min(valuation(ipow(Int(3), n) - d3, p), valuation(ipow(Int(10), n) - d3, p));
          ASSERT_EQ(v, static_cast<long>(i));
        }
      }
      EXPECT_TRUE(u.is_all());
    }
}

TEST(GcdProgressionSet, Examples) {
  auto r1 = gcd_progression_set(inst(3, 5, 1, 1, 1, 1, 2));
  EXPECT_EQ(r1.set, EPS::residue_class(0, 2));
  EXPECT_TRUE(r1.set.certified);
  EXPECT_FALSE(r1.certificate.heuristic);

  auto r2 = gcd_progression_set(inst(2, 2, 0, 0, 5, 5, 9));
  EXPECT_TRUE(r2.set.is_all());
  EXPECT_EQ(r2.certificate.dependence_witness, std::optional<u64>(1));

  auto r3 = gcd_progression_set(inst(2, 3, 1, 1, 0, 1, 2));
  EXPECT_TRUE(eps_equal(r3.set, EPS::finite({0})));
}

TEST(GcdProgressionSet, CertificateShape) {
  auto r = gcd_progression_set(inst(6, 10, 7, 7, 3, 1, 360));
  ASSERT_FALSE(r.certificate.primes.empty());
  u64 P = 1, N0 = 0;
  u64 prev = 0;
  for (const auto& rec : r.certificate.primes) {
    EXPECT_GT(rec.p, prev);
    prev = rec.p;
    P = lcm_u64(P, rec.period);
    N0 = std::max(N0, rec.threshold);
  }
  EXPECT_EQ(r.certificate.period, P);
  EXPECT_EQ(r.certificate.threshold, N0);
  expect_matches_direct(inst(6, 10, 7, 7, 3, 1, 360), r.set, 200);
}

TEST(GcdProgressionSet, SymmetricTargetsGiveAllN) {
  for (long d1 : {-3L, 2L, 4L, 7L})
    for (long d2 : {-2L, 3L, 9L})
      for (long d3 : {-5L, 0L, 1L, 6L})
        for (long a : {0L, 1L, 4L}) {
          const auto s = inst(d1, d2, d3, d3, a, a, 1);
          for (u64 n = 0; n <= 200; n += 7) ASSERT_TRUE(member(s, n));
          EXPECT_TRUE(gcd_progression_set(s).set.is_all());
        }
}

TEST(GcdProgressionSet, DependentBasesValidate) {
  for (long d : {2L, 3L, -6L})
    for (long d3 : {-1L, 0L, 1L, 5L})
      for (u64 k : {2u, 3u, 8u}) {
        const auto s = inst(d, -d, d3, d3, 1, 2, k);
        auto r = gcd_progression_set(s);
        ASSERT_EQ(r.certificate.dependence_witness, std::optional<u64>(2));
        expect_matches_direct(s, r.set, 150);
      }
}

TEST(GcdProgressionSet, SweepMatchesDirectEvaluation) {
  for (long d1 : {-5L, -2L, 2L, 3L, 4L, 12L})
    for (long d2 : {-3L, 3L, 5L, 6L})
      for (long d3 : {-2L, -1L, 0L, 1L, 2L, 3L, 9L})
        for (long a : {0L, 1L, 3L})
          for (long b : {0L, 2L})
            for (u64 k : {1u, 2u, 4u, 6u, 9u, 12u, 16u}) {
              const auto s = inst(d1, d2, d3, d3, a, b, k);
              auto r = gcd_progression_set(s);
              ASSERT_TRUE(r.set.certified) << s.to_string();
              expect_matches_direct(s, r.set, 80);
            }
}

TEST(GcdProgressionSet, AsymmetricTargetsAreLabelled) {
  const auto s = inst(3, 5, 1, 3, 1, 1, 4);
  auto r = gcd_progression_set(s);
  expect_matches_direct(s, r.set, 120);
  if (!r.set.certified) {
    EXPECT_TRUE(r.certificate.heuristic);
  }
}

}  // namespace
}  // namespace itergcd
