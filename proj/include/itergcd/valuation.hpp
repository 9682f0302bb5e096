#pragma once

#include <utility>
#include <vector>

#include "itergcd/eps.hpp"
#include "itergcd/integer.hpp"

namespace itergcd {

// Smallest e >= 1 with d^e = 1 mod m. Throws NotCoprime.
u64 multiplicative_order(const Int& d, u64 m);
// Order of d modulo p^L for prime p not dividing d; L >= 1. Throws BudgetExceeded if the
// order does not fit in 62 bits.
u64 order_mod_prime_power(const Int& d, u64 p, long L);

struct ValuationProfile {
  u64 prime = 0;
  // (j, {n >= 0 : v_p(d^n - t) >= j}) for j = 1..jmax
  std::vector<std::pair<long, EPS>> levels;
};

inline constexpr u64 kDefaultProfileCap = 1'000'000;

// Throws CapExceeded when p^jmax exceeds cap.
ValuationProfile valuation_profile(u64 p, const Int& d, const Int& t, long jmax,
                                   u64 cap = kDefaultProfileCap);

// Same sets without the modulus cap; levels stop early (returned vector shorter) once a level
// is empty, since all deeper levels are then empty too.
std::vector<EPS> profile_levels(u64 p, const Int& d, const Int& t, long jmax);

}  // namespace itergcd
