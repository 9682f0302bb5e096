#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "itergcd/eps.hpp"
#include "itergcd/integer.hpp"
#include "itergcd/mobius.hpp"
#include "itergcd/poly.hpp"
#include "itergcd/power_systems.hpp"
#include "itergcd/ratfunc.hpp"

namespace itergcd {

// A map iterated by the scans. Degree-one polynomials are stored as Mobius maps so their
// iterates stay linear.
class MapSpec {
 public:
  enum class Kind { Mobius, Polynomial };
  MapSpec() = default;
  static MapSpec mobius(const MobiusMap& m);
  static MapSpec polynomial(const Poly& p);  // InvalidArgument for constants
  // degree <= 1 invertible maps become Mobius, polynomials become Polynomial
  static MapSpec from_ratfunc(const RationalFunction& r);

  Kind kind() const { return kind_; }
  const MobiusMap& as_mobius() const { return mob_; }
  const Poly& as_poly() const { return poly_; }
  long degree() const { return kind_ == Kind::Mobius ? 1 : poly_.degree(); }
  RationalFunction to_ratfunc() const;
  // f^n; DegreeCapExceeded when degree^n > cap
  RationalFunction iterate(u64 n, u64 degree_cap = kDefaultDegreeCap) const;
  std::string to_string() const { return to_ratfunc().to_string(); }

 private:
  Kind kind_ = Kind::Mobius;
  MobiusMap mob_;
  Poly poly_;
};

// Numerator of r - c with the zeros of both denominators divided out; none when r == c.
std::optional<Poly> cleared_difference(const RationalFunction& r, const RationalFunction& c);

struct GridHit {
  u64 m = 0, n = 0;
  Poly factor;  // monic common factor, stationary part removed
  std::vector<Rat> roots;  // rational roots of factor, ascending
  long degree = 0;
};

struct GridScanOptions {
  u64 degree_cap = kDefaultDegreeCap;
  u64 seed = 0;
  unsigned threads = 1;
  bool diagonal_only = false;  // scan (n, n) only
};

struct GridScanReport {
  u64 M = 0, N = 0;
  std::vector<GridHit> hits;  // ordered by (m, n)
  std::vector<u64> degenerate_m;  // f^m == c1, excluded
  std::vector<u64> degenerate_n;  // g^n == c2, excluded
  // Common fixed points of f and g where c1 and c2 also fix; they solve every pair and are
  // reported once here instead of in each hit.
  Poly stationary_factor;
  std::vector<Rat> stationary_roots;
  u64 pairs_scanned = 0;
  u64 pairs_exact = 0;  // pairs that survived the modular prefilter
  std::vector<Rat> distinct_rational_solutions;
  // degree of the squarefree lcm of all factors (stationary included)
  long distinct_solution_lower_bound = 0;
};

// Solutions of f^m(x) = c1(x), g^n(x) = c2(x) over (m, n) in [1, M] x [1, N].
// A pair is ruled out modulo a prime when the reduced gcd is constant (sound by the
// resultant argument), the survivors are resolved exactly.
GridScanReport grid_scan(const MapSpec& f, const MapSpec& g, const RationalFunction& c1,
                         const RationalFunction& c2, u64 M, u64 N,
                         const GridScanOptions& opt = {});

enum class DmlMode { Exact, ModularMonteCarlo, FastPathPower, FastPathChebyshev };
const char* dml_mode_name(DmlMode m);

struct DmlScanOptions {
  u64 degree_cap = kDefaultDegreeCap;
  u64 seed = 0;
  bool use_fast_path = true;
  u64 validation_window = 500;
};

struct DmlScanResult {
  DmlMode mode = DmlMode::Exact;
  u64 horizon = 0;             // solvable covers n = 0..horizon
  std::vector<bool> solvable;
  std::vector<bool> verified;  // per n: decided by a proof rather than sampling
  std::vector<long> gcd_degree;  // -1 when not computed (fast paths) or unknown
  std::optional<EPS> detected;   // fast path: certified; otherwise detect_period, uncertified
  std::vector<PowerSystemResult> systems;  // fast-path delegates
};

// f^n(x) = g^n(x) = c(x) for n = 0..horizon, limited by deg^n <= degree_cap.
DmlScanResult dml_scan(const Poly& f, const Poly& g, const Poly& c, u64 horizon,
                       const DmlScanOptions& opt = {});

// +-x^d, d >= 0, as (sign, d); none otherwise
std::optional<std::pair<int, u64>> as_signed_monomial(const Poly& p);
// +-T_d with the convention T_0 = x (returned as d = 1 for +-x); none otherwise
std::optional<std::pair<int, u64>> as_signed_chebyshev(const Poly& p);

// Fast-path reductions, exposed for tests.
std::vector<GeneralPowerSystem> monomial_systems(const Poly& f, const Poly& g, const Poly& c);
std::vector<GeneralPowerSystem> chebyshev_systems(const Poly& f, const Poly& g, const Poly& c);

enum class FinitenessClass { Generic, ExceptionalMobiusPair, ExceptionalAffinePair };
const char* finiteness_class_name(FinitenessClass c);

struct FinitenessReport {
  FinitenessClass cls = FinitenessClass::Generic;
  std::string reason;            // which ratio is a root of unity
  Rat alpha, beta, gamma, delta;  // f = alpha x + beta, g = x/(gamma x + delta) or delta x + gamma
  bool g_affine = false;
  std::vector<long> solutions_per_n;  // index n-1: distinct solutions at n (stationary included)
  long distinct_total = 0;            // over all n <= horizon
  long last_growth_n = 0;             // last n that added a new solution
  bool predicted_finite = true;
  bool consistent = true;  // growth pattern matches the prediction on the scanned range
};

// Input in normal form: f affine, g affine or x/(gamma x + delta). Throws NotFree when a
// composition relation of length <= 8 exists, InvalidArgument outside the normal form.
FinitenessReport finiteness_probe(const MobiusMap& f, const MobiusMap& g,
                                  const RationalFunction& c, u64 horizon,
                                  const GridScanOptions& opt = {});

}  // namespace itergcd
