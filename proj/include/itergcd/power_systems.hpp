#pragma once

#include <optional>
#include <vector>

#include "itergcd/eps.hpp"
#include "itergcd/gcd_progressions.hpp"
#include "itergcd/integer.hpp"

namespace itergcd {

// (xi^a x^d1)^n = xi^c1 x^d3 and (xi^b x^d2)^n = xi^c2 x^d3 with xi of order k.
struct PowerSystemInstance {
  u64 k = 1;
  u64 a = 0, b = 0, c1 = 0, c2 = 0;  // exponents < k
  Int d1 = 2, d2 = 2;                // > 1
  Int d3 = 0;                        // >= 0
};

// Same system with independent targets x^d3 and x^d4 (d4 may be negative); exponents are
// taken mod k.
struct GeneralPowerSystem {
  u64 k = 1;
  Int a, b, c1, c2;
  Int d1, d2, d3, d4;
};

GeneralPowerSystem to_general(const PowerSystemInstance& inst);

// x^A = xi^a', x^B = xi^b' solvable in C^x, by k*gcd(A, B) | b'A - a'B.
// Throws NonpositiveExponentGap unless A, B > 0.
bool lemma_criterion(u64 k, const Int& ap, const Int& bp, const Int& A, const Int& B);
// Any signs; x^(-e) = xi^c is read as x^e = xi^(-c).
bool lemma_criterion_signed(u64 k, const Int& ap, const Int& bp, const Int& A, const Int& B);

// Exhaustive search over the solutions of the first equation inside mu_N, N = lcm(k|A|, k|B|).
// Throws CapExceeded when N > 10^6.
inline constexpr u64 kLemmaOracleCap = 1'000'000;
bool lemma_bruteforce_oracle(u64 k, const Int& ap, const Int& bp, const Int& A, const Int& B);

// A common solution x = exp(2 pi i e / order), constructed by solving the linear congruence
// and verified exactly; none when the system is inconsistent.
struct RootWitness {
  Int exponent;
  Int order;
};
std::optional<RootWitness> lemma_witness(u64 k, const Int& ap, const Int& bp, const Int& A,
                                         const Int& B);

// Per-n decision by the oracle (brute force under the cap, constructive witness above it),
// with iterate exponents from closed-form geometric sums.
bool power_system_solvable_at(const GeneralPowerSystem& sys, u64 n);

struct PowerSystemClass {
  u64 residue = 0;  // n = residue mod tracker period, n >= first_structural
  u64 e1 = 0, e2 = 0;  // iterate exponents mod k on the class
  GcdSetResult gcd;    // engine output for the reduced exponents
};

struct PowerSystemResult {
  EPS set;
  u64 n_min = 0;            // smallest n with d1^n > d3 and d2^n > d4
  u64 tracker_preperiod = 0;
  u64 tracker_period = 1;
  u64 first_structural = 0;  // n below this are decided per n
  std::vector<PowerSystemClass> classes;
  u64 validated_upto = 0;
};

// Throws ValidationMismatch if the assembled set disagrees with the per-n oracle on
// [0, min(horizon, N0 + 2P)).
PowerSystemResult power_system_index_set(const PowerSystemInstance& inst, u64 horizon,
                                         u64 validation_window = 500);
PowerSystemResult power_system_index_set(const GeneralPowerSystem& sys, u64 horizon,
                                         u64 validation_window = 500);

}  // namespace itergcd
