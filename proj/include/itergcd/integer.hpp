#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace itergcd {

using Int = mpz_class;
using Rat = mpq_class;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// v_p(0) is reported as this sentinel.
inline constexpr long kInfVal = std::numeric_limits<long>::max();

long valuation(const Int& x, const Int& p);
long valuation(const Int& x, u64 p);
long valuation_u64(u64 x, u64 p);

Int ipow(const Int& base, u64 e);
Int ipow_si(long base, u64 e);
Rat rpow(const Rat& base, long e);  // negative e inverts; base must be nonzero then

u64 gcd_u64(u64 a, u64 b);
u64 lcm_u64(u64 a, u64 b);  // throws BudgetExceeded on overflow
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 b, u64 e, u64 m);

bool is_prime_u64(u64 n);
// prime factors (with multiplicity) of n by trial division; n < 2^63
std::vector<std::pair<u64, int>> factor_u64(u64 n);
std::vector<u64> divisors_u64(u64 n);
// primes p | n with their exponents, for arbitrary-precision n with small prime factors
// (trial division up to bound; throws if a cofactor remains)
std::vector<std::pair<u64, int>> factor_smooth(const Int& n, u64 bound = 1000000);

// Largest prime strictly below `below`.
u64 prev_prime(u64 below);

bool fits_u64(const Int& x);
bool fits_i64(const Int& x);
u64 to_u64(const Int& x);
i64 to_i64(const Int& x);
Int from_u64(u64 x);
Int from_i64(i64 x);

// nonnegative residue
Int mod_floor(const Int& a, const Int& m);
u64 mod_u64(const Int& a, u64 m);

// Rational number reconstruction of a mod m; false if no n/d with |n|,d <= sqrt(m/2).
bool rational_reconstruct(const Int& a, const Int& m, Rat& out);

// gcd-free basis of a set of positive integers (every input is a product of powers of basis elements)
std::vector<Int> coprime_base(const std::vector<Int>& xs);

std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

}  // namespace itergcd
