#include <gtest/gtest.h>

#include <random>

#include "itergcd/eps.hpp"
#include "itergcd/errors.hpp"
#include "itergcd/integer.hpp"
#include "itergcd/root_of_unity.hpp"
#include "itergcd/valuation.hpp"

namespace itergcd {
namespace {

u64 order_by_loop(long d, u64 m) {
  const u64 base = static_cast<u64>(((d % static_cast<long>(m)) + static_cast<long>(m)) % static_cast<long>(m));
  u64 x = base % m;
  for (u64 e = 1; e <= m; ++e) {
    if (x == 1 % m) return e;
    x = mulmod(x, base, m);
  }
  return 0;
}

u64 euler_phi(u64 m) {
  u64 r = m;
  for (auto [p, e] : factor_u64(m)) r = r / p * (p - 1);
  return r;
}

TEST(MultiplicativeOrder, Examples) {
  EXPECT_EQ(multiplicative_order(2, 3), 2u);
  EXPECT_EQ(multiplicative_order(1, 17), 1u);
  EXPECT_EQ(multiplicative_order(2, 9), 6u);
}

TEST(MultiplicativeOrder, RejectsNonUnit) {
  try {
    multiplicative_order(6, 9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCoprime);
  }
}

TEST(MultiplicativeOrder, AgreesWithLoopAndDividesPhi) {
  for (long d = -25; d <= 25; ++d) {
    for (u64 m = 2; m <= 240; ++m) {
      if (std::gcd(static_cast<u64>(d < 0 ? -d : d), m) != 1) continue;
      const u64 e = multiplicative_order(d, m);
      ASSERT_EQ(e, order_by_loop(d, m)) << d << " mod " << m;
      ASSERT_EQ(euler_phi(m) % e, 0u);
      ASSERT_EQ(mod_u64(ipow(Int(d), e) - 1, m), 0u);
    }
  }
}

// {n in [0, H) : v_p(d^n - t) >= j} by direct evaluation
std::vector<bool> level_window(u64 p, long d, long t, long j, u64 H) {
  std::vector<bool> out(H);
  for (u64 n = 0; n < H; ++n) out[n] = valuation(ipow(Int(d), n) - t, p) >= j;
  return out;
}

void expect_matches_window(const EPS& s, const std::vector<bool>& w) {
  for (u64 n = 0; n < w.size(); ++n) ASSERT_EQ(s.contains(n), w[n]) << "n=" << n << " set " << s.to_string();
}

TEST(ValuationProfile, Examples) {
  auto a = valuation_profile(3, 2, 1, 2);
  ASSERT_EQ(a.levels.size(), 2u);
  EXPECT_TRUE(eps_equal(a.levels[0].second, EPS::residue_class(0, 2)));
  EXPECT_TRUE(eps_equal(a.levels[1].second, EPS::residue_class(0, 6)));

  auto b = valuation_profile(5, 2, 3, 1);
  EXPECT_TRUE(eps_equal(b.levels[0].second, EPS::residue_class(3, 4)));

  auto c = valuation_profile(2, 4, 0, 3);
  EXPECT_TRUE(eps_equal(c.levels[0].second, EPS::at_least(1)));
  EXPECT_TRUE(eps_equal(c.levels[1].second, EPS::at_least(1)));
  EXPECT_TRUE(eps_equal(c.levels[2].second, EPS::at_least(2)));
}

TEST(ValuationProfile, CapExceeded) {
  try {
    valuation_profile(3, 2, 1, 20);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CapExceeded);
  }
}

TEST(ValuationProfile, MatchesDirectValuationsAndNests) {
  for (u64 p : {2u, 3u, 5u, 7u}) {
    for (long d : {-6L, -3L, -2L, 2L, 3L, 4L, 5L, 6L, 10L, 12L}) {
      for (long t : {-8L, -4L, -1L, 0L, 1L, 2L, 3L, 4L, 8L, 9L, 25L, 27L}) {
        const long jmax = p == 2 ? 6 : 3;
        auto prof = valuation_profile(p, d, t, jmax);
        ASSERT_EQ(prof.levels.size(), static_cast<size_t>(jmax));
        for (long j = 1; j <= jmax; ++j) {
          const EPS& s = prof.levels[j - 1].second;
          expect_matches_window(s, level_window(p, d, t, j, 160));
          if (j > 1) {
            ASSERT_TRUE(eps_subset(s, prof.levels[j - 2].second));
            ASSERT_TRUE(eps_equal(eps_intersect(s, prof.levels[j - 2].second), s));
          }
        }
      }
    }
  }
}

TEST(ValuationProfile, UnitBaseLevelsAreSingleClasses) {
  for (long t : {1L, 2L, 4L, 7L}) {
    auto prof = valuation_profile(3, 2, t, 4);
    for (auto& [j, s] : prof.levels) {
      if (s.is_empty()) continue;
      EXPECT_EQ(s.residues.size(), 1u) << "j=" << j;
    }
  }
}

TEST(Eps, AlgebraExamples) {
  EXPECT_TRUE(eps_union(EPS::residue_class(0, 2), EPS::residue_class(1, 2)).is_all());
  EXPECT_EQ(eps_intersect(EPS::residue_class(0, 2), EPS::residue_class(0, 3)), EPS::residue_class(0, 6));
  EXPECT_TRUE(eps_complement(EPS::empty()).is_all());
  EXPECT_TRUE(eps_complement(EPS::all()).is_empty());
}

TEST(Eps, CanonicalFormIsMinimal) {
  EPS s;
  s.threshold = 5;
  s.period = 6;
  s.residues = {1, 3, 5};
  s.exceptional = {1, 3};
  EPS c = canonical(s);
  EXPECT_EQ(c.period, 2u);
  EXPECT_EQ(c.threshold, 0u);
  EXPECT_EQ(c.residues, std::vector<u64>{1});
  EXPECT_TRUE(c.exceptional.empty());
  EXPECT_EQ(canonical(c), c);
}

EPS random_eps(std::mt19937_64& rng) {
  EPS s;
  s.period = 1 + rng() % 12;
  s.threshold = rng() % 9;
  for (u64 r = 0; r < s.period; ++r)
    if (rng() % 2) s.residues.push_back(r);
  for (u64 n = 0; n < s.threshold; ++n)
    if (rng() % 2) s.exceptional.push_back(n);
  return s;
}

TEST(Eps, SetAlgebraIsPointwise) {
  std::mt19937_64 rng(20260101);
  for (int it = 0; it < 400; ++it) {
    const EPS a = random_eps(rng), b = random_eps(rng);
    const EPS u = eps_union(a, b), i = eps_intersect(a, b), ca = eps_complement(a);
    const u64 H = 10 * lcm_u64(a.period, b.period) + std::max(a.threshold, b.threshold);
    for (u64 n = 0; n < H; ++n) {
      ASSERT_EQ(u.contains(n), a.contains(n) || b.contains(n));
      ASSERT_EQ(i.contains(n), a.contains(n) && b.contains(n));
      ASSERT_EQ(ca.contains(n), !a.contains(n));
    }
    for (const EPS& r : {u, i, ca, canonical(a)}) {
      ASSERT_EQ(canonical(r), r);
      ASSERT_TRUE(std::is_sorted(r.residues.begin(), r.residues.end()));
      ASSERT_TRUE(std::is_sorted(r.exceptional.begin(), r.exceptional.end()));
    }
    ASSERT_TRUE(eps_equal(a, canonical(a)));
    ASSERT_EQ(eps_equal(a, b), eps_equal(canonical(a), canonical(b)));
  }
}

TEST(DetectPeriod, Examples) {
  EPS all = detect_period(std::vector<bool>(100, true));
  EXPECT_EQ(all.threshold, 0u);
  EXPECT_EQ(all.period, 1u);
  EXPECT_EQ(all.residues, std::vector<u64>{0});
  EXPECT_FALSE(all.certified);

  std::vector<bool> alt(100);
  for (size_t n = 0; n < alt.size(); ++n) alt[n] = n % 2 == 1;
  EPS a = detect_period(alt);
  EXPECT_EQ(a.period, 2u);
  EXPECT_EQ(a.residues, std::vector<u64>{1});
}

TEST(DetectPeriod, GcdDivisibilityWindow) {
  // n with 2 gcd(3^n - 1, 5^n - 1) | 3^n - 5^n, evaluated directly
  std::vector<bool> w(200);
  for (u64 n = 0; n < w.size(); ++n) {
    const Int A = ipow(Int(3), n) - 1, B = ipow(Int(5), n) - 1;
    Int g;
    mpz_gcd(g.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
    const Int lhs = 2 * g, rhs = A - B;
    w[n] = lhs == 0 ? rhs == 0 : mpz_divisible_p(rhs.get_mpz_t(), lhs.get_mpz_t()) != 0;
  }
  EPS s = detect_period(w);
  EXPECT_EQ(s.threshold, 0u);
  EXPECT_EQ(s.period, 2u);
  EXPECT_EQ(s.residues, std::vector<u64>{0});
}

TEST(DetectPeriod, NoPeriodFound) {
  std::vector<bool> w(40, false);
  for (u64 k = 1; k * k < w.size(); ++k) w[k * k] = true;
  try {
    detect_period(w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoPeriodFound);
  }
}

TEST(RootOfUnity, CanonicalEquality) {
  EXPECT_EQ(RootOfUnity(4, 2), RootOfUnity(2, 1));
  EXPECT_EQ(RootOfUnity(6, 0), RootOfUnity());
  EXPECT_EQ(RootOfUnity(3, 1) * RootOfUnity(2, 1), RootOfUnity(6, 5));
  EXPECT_TRUE((RootOfUnity(5, 2) * RootOfUnity(5, 2).inverse()).is_one());
  EXPECT_EQ(RootOfUnity(8, 3).pow(8), RootOfUnity());
  EXPECT_EQ(RootOfUnity(3, -1), RootOfUnity(3, 2));
}

TEST(Integer, ValuationAndPowers) {
  EXPECT_EQ(valuation(Int(48), 2u), 4);
  EXPECT_EQ(valuation(Int(0), 3u), kInfVal);
  EXPECT_EQ(ipow_si(-3, 5), Int(-243));
  EXPECT_EQ(rpow(Rat(2, 3), -2), Rat(9, 4));
  EXPECT_EQ(powmod(3, 200, 1000000007ULL), mod_u64(ipow(Int(3), 200), 1000000007ULL));
}

TEST(Integer, RationalReconstruction) {
  const Int m = Int(1000003) * 1000033;
  for (auto [n, d] : std::vector<std::pair<long, long>>{{1, 2}, {-7, 13}, {355, 113}, {0, 1}}) {
    Int inv;
    mpz_invert(inv.get_mpz_t(), Int(d).get_mpz_t(), m.get_mpz_t());
    Rat out;
    ASSERT_TRUE(rational_reconstruct(mod_floor(Int(n) * inv, m), m, out));
    EXPECT_EQ(out, Rat(n, d));
  }
}

TEST(Integer, CoprimeBaseSpansInputs) {
  const std::vector<Int> xs = {12, 18, 45, 7, 49};
  auto base = coprime_base(xs);
  for (size_t i = 0; i < base.size(); ++i)
    for (size_t j = i + 1; j < base.size(); ++j) {
      Int g;
      mpz_gcd(g.get_mpz_t(), base[i].get_mpz_t(), base[j].get_mpz_t());
      EXPECT_EQ(g, 1);
    }
  for (Int x : xs) {
    for (const Int& b : base)
      while (mpz_divisible_p(x.get_mpz_t(), b.get_mpz_t())) x /= b;
    EXPECT_EQ(x, 1);
  }
}

}  // namespace
}  // namespace itergcd
