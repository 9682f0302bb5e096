#include <gtest/gtest.h>

#include <random>

#include "itergcd/errors.hpp"
#include "itergcd/power_systems.hpp"

namespace itergcd {
namespace {

// x^A = xi^ap, x^B = xi^bp with xi = exp(2 pi i/k). Every solution of the first equation is
// exp(2 pi i (ap + k j)/(k A)) for j in [0, |A|); test each against the second.
bool system_solvable(u64 k, Int ap, Int bp, Int A, Int B) {
  if (A < 0) {
    A = -A;
    ap = -ap;
  }
  if (B < 0) {
    B = -B;
    bp = -bp;
  }
  const Int K(static_cast<unsigned long>(k));
  if (A == 0 && B == 0) return mod_floor(ap, K) == 0 && mod_floor(bp, K) == 0;
  if (A == 0) return mod_floor(ap, K) == 0;
  if (B == 0) return mod_floor(bp, K) == 0;
  const Int mod = K * A;
  for (Int j = 0; j < A; ++j) {
    const Int e = ap + K * j;  // x = exp(2 pi i e/(k A))
    if (mod_floor(B * e - bp * A, mod) == 0) return true;
  }
  return false;
}

TEST(Lemma, Examples) {
  EXPECT_TRUE(lemma_criterion(1, 0, 0, 5, 7));
  EXPECT_FALSE(lemma_criterion(2, 1, 1, 2, 4));
  EXPECT_TRUE(lemma_criterion(2, 1, 1, 8, 24));
  EXPECT_TRUE(lemma_bruteforce_oracle(1, 0, 0, 5, 7));
  EXPECT_FALSE(lemma_bruteforce_oracle(2, 1, 0, 2, 2));
  EXPECT_TRUE(lemma_bruteforce_oracle(2, 1, 1, 8, 24));
}

TEST(Lemma, Errors) {
  try {
    lemma_criterion(2, 1, 1, 0, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonpositiveExponentGap);
  }
  try {
    lemma_bruteforce_oracle(7, 1, 1, 1000, 999);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CapExceeded);
  }
}

TEST(Lemma, CriterionEqualsOracleOnSmallBox) {
  for (u64 k = 1; k <= 6; ++k)
    for (u64 ap = 0; ap < k; ++ap)
      for (u64 bp = 0; bp < k; ++bp)
        for (long A = 1; A <= 24; ++A)
          for (long B = 1; B <= 24; ++B) {
            const bool c = lemma_criterion(k, ap, bp, A, B);
            ASSERT_EQ(c, system_solvable(k, ap, bp, A, B)) << k << " " << ap << " " << bp << " " << A << " " << B;
            ASSERT_EQ(c, lemma_bruteforce_oracle(k, ap, bp, A, B));
          }
}

TEST(Lemma, SignedExponents) {
  for (u64 k = 1; k <= 5; ++k)
    for (u64 ap = 0; ap < k; ++ap)
      for (u64 bp = 0; bp < k; ++bp)
        for (long A = -9; A <= 9; ++A)
          for (long B = -9; B <= 9; ++B) {
            if (A == 0 || B == 0) continue;
            ASSERT_EQ(lemma_criterion_signed(k, ap, bp, A, B), system_solvable(k, ap, bp, A, B));
            ASSERT_EQ(lemma_bruteforce_oracle(k, ap, bp, A, B), system_solvable(k, ap, bp, A, B));
          }
}

TEST(Lemma, WitnessesSolveTheSystem) {
  for (u64 k : {2u, 3u, 12u})
    for (long A : {6L, 35L, 1024L, 59048L})
      for (long B : {4L, 21L, 243L})
        for (u64 ap = 0; ap < k; ap += 1)
          for (u64 bp = 0; bp < k; bp += 1) {
            auto w = lemma_witness(k, ap, bp, A, B);
            ASSERT_EQ(w.has_value(), lemma_criterion(k, ap, bp, A, B));
            if (!w) continue;
            // x = exp(2 pi i e/ord): x^A = xi^ap  <=>  A e/ord - ap/k is an integer
            const Int K(static_cast<unsigned long>(k));
            ASSERT_EQ(mod_floor(K * A * w->exponent - Int(static_cast<unsigned long>(ap)) * w->order, K * w->order), 0);
            ASSERT_EQ(mod_floor(K * B * w->exponent - Int(static_cast<unsigned long>(bp)) * w->order, K * w->order), 0);
          }
}

// Per-n decision from the iterate exponents: f^n(x) = xi^(a S1) x^(d1^n) with
// S1 = 1 + d1 + ... + d1^(n-1).
bool instance_solvable_at(const GeneralPowerSystem& s, u64 n) {
  Int S1 = 0, S2 = 0, P1 = 1, P2 = 1;
  for (u64 i = 0; i < n; ++i) {
    S1 += P1;
    S2 += P2;
    P1 *= s.d1;
    P2 *= s.d2;
  }
  return system_solvable(s.k, s.c1 - s.a * S1, s.c2 - s.b * S2, P1 - s.d3, P2 - s.d4);
}

TEST(PowerSystem, AllOnesForTrivialRoot) {
  PowerSystemInstance in;
  in.k = 1;
  in.d1 = 2;
  in.d2 = 3;
  in.d3 = 1;
  auto r = power_system_index_set(in, 200);
  EXPECT_TRUE(r.set.is_all());
}

TEST(PowerSystem, SignTwistedExample) {
  PowerSystemInstance in;
  in.k = 2;
  in.c1 = in.c2 = 1;
  in.d1 = 3;
  in.d2 = 5;
  in.d3 = 1;
  auto r = power_system_index_set(in, 200);
  EXPECT_TRUE(r.set.certified);
  for (u64 n = 1; n < 200; ++n) EXPECT_EQ(r.set.contains(n), n % 2 == 0) << n;
  for (u64 n = 0; n < 12; ++n) EXPECT_EQ(r.set.contains(n), instance_solvable_at(to_general(in), n)) << n;
}

TEST(PowerSystem, TwistedIterateExample) {
  PowerSystemInstance in;
  in.k = 2;
  in.a = 1;
  in.d1 = 2;
  in.d2 = 3;
  in.d3 = 0;
  auto r = power_system_index_set(in, 200);
  for (u64 n = 0; n <= 8; ++n) EXPECT_EQ(r.set.contains(n), instance_solvable_at(to_general(in), n)) << n;
}

TEST(PowerSystem, RandomInstancesMatchPerNDecision) {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 40; ++it) {
    GeneralPowerSystem s;
    s.k = 1 + rng() % 8;
    s.a = static_cast<long>(rng() % s.k);
    s.b = static_cast<long>(rng() % s.k);
    s.c1 = static_cast<long>(rng() % s.k);
    s.c2 = static_cast<long>(rng() % s.k);
    s.d1 = 2 + static_cast<long>(rng() % 3);
    s.d2 = 2 + static_cast<long>(rng() % 3);
    s.d3 = static_cast<long>(rng() % 4);
    s.d4 = static_cast<long>(rng() % 7) - 3;
    auto r = power_system_index_set(s, 200);
    for (u64 n = 0; n <= 9; ++n) {
      ASSERT_EQ(r.set.contains(n), instance_solvable_at(s, n)) << "it=" << it << " n=" << n;
      ASSERT_EQ(power_system_solvable_at(s, n), instance_solvable_at(s, n));
    }
  }
}

TEST(PowerSystem, TrackerClassesPartitionTheTail) {
  GeneralPowerSystem s;
  s.k = 6;
  s.a = 1;
  s.b = 5;
  s.c1 = 2;
  s.c2 = 3;
  s.d1 = 2;
  s.d2 = 3;
  s.d3 = 1;
  s.d4 = 1;
  auto r = power_system_index_set(s, 200);
  ASSERT_GE(r.first_structural, r.n_min);
  std::vector<int> hits(r.tracker_period, 0);
  for (const auto& c : r.classes) {
    ASSERT_LT(c.residue, r.tracker_period);
    ++hits[c.residue];
  }
  for (int h : hits) EXPECT_EQ(h, 1);
}

}  // namespace
}  // namespace itergcd
