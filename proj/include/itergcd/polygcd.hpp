#pragma once

#include <functional>
#include <vector>

#include "itergcd/integer.hpp"
#include "itergcd/poly.hpp"

namespace itergcd {

// Dense polynomial over F_p for a word prime p < 2^62, lowest degree first, trimmed.
using ModPoly = std::vector<u64>;

namespace modp {
void trim(ModPoly& a);
u64 inv(u64 a, u64 p);
ModPoly add(const ModPoly& a, const ModPoly& b, u64 p);
ModPoly sub(const ModPoly& a, const ModPoly& b, u64 p);
ModPoly mul(const ModPoly& a, const ModPoly& b, u64 p);
ModPoly scale(const ModPoly& a, u64 s, u64 p);
ModPoly rem(const ModPoly& a, const ModPoly& b, u64 p);
ModPoly gcd(ModPoly a, ModPoly b, u64 p);  // monic; gcd(0,0) = 0
ModPoly compose(const ModPoly& f, const ModPoly& h, u64 p);  // f(h)
u64 eval(const ModPoly& f, u64 x, u64 p);
// reduction of an integer polynomial; the denominator-free caller guarantees exactness
ModPoly from_integer(const std::vector<Int>& c, u64 p);
// reduction of a rational polynomial; false if p divides a denominator
bool from_rational(const Poly& f, u64 p, ModPoly& out);
u64 reduce(const Rat& r, u64 p, bool& ok);
}  // namespace modp

// The deterministic sequence of word primes used by the modular kernels for a given seed.
u64 modular_prime(u64 seed, size_t index);

enum class GcdSearchStatus { Coprime, Verified, Unverified };
struct GcdSearchResult {
  GcdSearchStatus status = GcdSearchStatus::Unverified;
  Poly gcd;         // monic; set unless Unverified
  long degree = -1;  // smallest modular gcd degree seen when Unverified
};

// Modular gcd driven by caller-supplied images. images(p, a, b) returns false when p is
// unusable; a usable prime must preserve the degrees of both operands, so a constant gcd
// mod p proves coprimality. Nontrivial candidates come from CRT and rational reconstruction
// and count only once verify() accepts them. Reconstruction is skipped when the modular
// degree exceeds max_degree (>= 0).
GcdSearchResult modular_gcd_search(
    const std::function<bool(u64, ModPoly&, ModPoly&)>& images,
    const std::function<bool(const Poly&)>& verify, u64 seed, size_t max_primes = 400,
    long max_degree = -1);

// Monic gcd in Q[x] via modular images, CRT and rational reconstruction, verified by exact
// division; falls back to the subresultant sequence if reconstruction does not settle.
// gcd(p, 0) = monic(p); both zero is an error.
Poly common_factor(const Poly& a, const Poly& b, u64 seed = 0);

// Monic gcd in Q[x] through the subresultant PRS over Z[x].
Poly subresultant_gcd(const Poly& a, const Poly& b);

// Rational roots of a nonzero polynomial, sorted ascending, without multiplicity.
std::vector<Rat> rational_roots(const Poly& f);

}  // namespace itergcd
