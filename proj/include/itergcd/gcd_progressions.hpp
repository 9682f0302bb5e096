#pragma once

#include <optional>
#include <string>
#include <vector>

#include "itergcd/eps.hpp"
#include "itergcd/integer.hpp"

namespace itergcd {

// {n : k * gcd(d1^n - d3, d2^n - d4) | b(d1^n - d3) - a(d2^n - d4)}
struct GcdSetInstance {
  Int d1, d2, d3, d4, a, b;
  u64 k = 1;
  bool symmetric_targets() const { return d3 == d4; }
  std::string to_string() const;
};

enum class CaseTag { CaseI, CaseIIRootOfUnity, CaseIIIZero, DegenerateDependence, ZeroOrUnitBase };
const char* case_tag_name(CaseTag t);

// Which structural argument bounded the period on (part of) N for one prime.
enum class Mechanism { ExactZero, LinkedClass, RootOfUnityTower, ZeroTower, BoundedValuation, Heuristic };
const char* mechanism_name(Mechanism m);

struct PrimeRecord {
  u64 p = 0;
  long e = 0;  // v_p(k)
  CaseTag tag = CaseTag::CaseI;
  std::vector<Mechanism> mechanisms;
  // max of min(v_p A, v_p B) over the part of N not covered by exact zeros, links or towers
  std::optional<long> ell;
  std::string growth_law;  // tower description, empty when no tower applies
  u64 period = 1;          // structural bound P_p
  u64 threshold = 0;       // structural bound N0_p
  EPS set;                 // {n : the p-part of the condition holds}, canonical
};

struct GcdSetCertificate {
  std::vector<PrimeRecord> primes;  // sorted by p
  std::optional<u64> dependence_witness;  // minimal m with d1^m = d2^m
  u64 period = 1;                     // lcm of per-prime bounds
  u64 threshold = 0;                  // max of per-prime bounds
  u64 validated_upto = 0;             // oracle agreement checked on [0, validated_upto)
  bool heuristic = false;
};

struct GcdSetResult {
  EPS set;
  GcdSetCertificate certificate;
};

// Soft cap on |d^n| used by the brute-force oracle.
inline constexpr long kBruteForceDigitBudget = 50000;
// Cap on N0_p + P_p evaluated exactly per prime.
inline constexpr u64 kPrimeWindowCap = 2'000'000;

// Largest horizon the oracle accepts for this instance under the digit budget.
u64 bruteforce_horizon_limit(const GcdSetInstance& inst);
// Throws BudgetExceeded when horizon exceeds bruteforce_horizon_limit.
std::vector<bool> gcd_set_bruteforce(const GcdSetInstance& inst, u64 horizon);

// Over Z: 1 if d1 = d2, 2 if d1 = -d2 != 0, otherwise none.
std::optional<u64> multiplicative_dependence(const Int& d1, const Int& d2);

CaseTag case_classify(u64 p, const GcdSetInstance& inst);

struct ValuationBound {
  long ell = 0;
  std::vector<EPS> levels;  // levels[j-1] = {n : v_p(d1^n - d3) >= j and v_p(d2^n - d3) >= j}, j <= ell
};

// Requires d3 not in {0, 1, -1} and d1, d2 multiplicatively independent (InvalidArgument
// otherwise). Throws CapExceeded if the ascent passes level 64.
ValuationBound gcd_valuation_bound(u64 p, const Int& d1, const Int& d2, const Int& d3);

// {n : min(v_p(d1^n - d3), v_p(d2^n - d3)) = j} for j = 0..ell; a partition of N.
std::vector<EPS> case_one_strata(u64 p, const Int& d1, const Int& d2, const Int& d3);

// Per-prime certified set; exposed for the power-system assembly and tests.
PrimeRecord prime_condition_set(const GcdSetInstance& inst, u64 p, u64 heuristic_window = 512);

// Throws ValidationMismatch if the structural set disagrees with the oracle, BudgetExceeded
// if a per-prime window exceeds kPrimeWindowCap.
GcdSetResult gcd_progression_set(const GcdSetInstance& inst, u64 validation_window = 500);

}  // namespace itergcd
