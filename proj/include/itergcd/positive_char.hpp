#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "itergcd/integer.hpp"

namespace itergcd {

// F_q, q = p^e <= 2^16, as F_p[z]/(m) with m the least monic irreducible of degree e
// (coefficient vectors compared from the top). Elements are encoded as base-p integers of
// their coordinates, so 0 and 1 are the field's zero and one.
class Fq {
 public:
  using Elem = std::uint32_t;
  Fq(u64 p, unsigned e);  // InvalidArgument unless p is prime and p^e <= 2^16
  static Fq of_order(u64 q);  // q a prime power

  u64 p() const { return p_; }
  unsigned e() const { return e_; }
  u64 q() const { return q_; }
  const std::vector<u64>& modulus() const { return modulus_; }  // low degree first, monic

  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  Elem inv(Elem a) const;  // InvalidArgument for 0
  Elem pow(Elem a, u64 n) const;
  Elem from_int(long v) const;  // image of an integer in the prime field
  std::vector<u64> coords(Elem a) const;
  Elem from_coords(const std::vector<u64>& c) const;
  std::string to_string(Elem a) const;  // prime field elements as integers, others as "(z + 1)"

 private:
  u64 p_, q_;
  unsigned e_;
  std::vector<u64> modulus_;
  std::vector<Elem> add_, mul_, neg_, inv_;
};

// Polynomial over F_q (in t or in x), low degree first, trimmed.
using FqPoly = std::vector<Fq::Elem>;

// Element of F_q(t): num/den coprime, den monic and nonzero.
struct FqRat {
  FqPoly num, den{1};
  bool operator==(const FqRat&) const = default;
};

// Polynomial in x over F_q(t).
using KPoly = std::vector<FqRat>;

// x -> A x + B over F_q(t)
struct LinearMapOverK {
  FqRat A, B;
  bool operator==(const LinearMapOverK&) const = default;
};

namespace fq {
void trim(FqPoly& a);
FqPoly add(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly sub(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly mul(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly scale(const Fq& F, const FqPoly& a, Fq::Elem s);
std::pair<FqPoly, FqPoly> divmod(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly gcd(const Fq& F, FqPoly a, FqPoly b);  // monic
FqPoly pow(const Fq& F, const FqPoly& a, u64 n);
Fq::Elem eval(const Fq& F, const FqPoly& a, Fq::Elem v);
std::string to_string(const Fq& F, const FqPoly& a, char var);

FqRat rat(const Fq& F, FqPoly num, FqPoly den = {1});  // normalizes; PoleError for den 0
FqRat radd(const Fq& F, const FqRat& a, const FqRat& b);
FqRat rsub(const Fq& F, const FqRat& a, const FqRat& b);
FqRat rmul(const Fq& F, const FqRat& a, const FqRat& b);
FqRat rdiv(const Fq& F, const FqRat& a, const FqRat& b);
FqRat rpow(const Fq& F, const FqRat& a, long n);
bool is_zero(const FqRat& a);
std::string to_string(const Fq& F, const FqRat& a);

void ktrim(KPoly& a);
KPoly kadd(const Fq& F, const KPoly& a, const KPoly& b);
KPoly ksub(const Fq& F, const KPoly& a, const KPoly& b);
KPoly kmul(const Fq& F, const KPoly& a, const KPoly& b);
KPoly kscale(const Fq& F, const KPoly& a, const FqRat& s);
KPoly kpow(const Fq& F, const KPoly& a, u64 n);
// coefficients constant in t
KPoly kconst(const FqPoly& x_poly);
// quotient and remainder of a by (x - lambda)
std::pair<KPoly, FqRat> synthetic_division(const Fq& F, const KPoly& a, const FqRat& lambda);
}  // namespace fq

// f^n in closed form: (A^n, B (A^n - 1)/(A - 1)), or (1, n B) when A = 1.
LinearMapOverK linear_iterate(const Fq& F, const LinearMapOverK& f, u64 n);
// f o g
LinearMapOverK linear_compose(const Fq& F, const LinearMapOverK& f, const LinearMapOverK& g);

// Bivariate polynomial over F_q as terms c X^i Y^j.
struct BivariateTerm {
  unsigned i = 0, j = 0;
  Fq::Elem c = 0;
};
using Bivariate = std::vector<BivariateTerm>;

// Rational function in x over F_q(t).
struct KRational {
  KPoly num, den;
};

struct TheoremConditionInput {
  Bivariate F;
  FqRat alpha_root, delta_root;  // alpha'^(q-1) = alpha, delta'^(q-1) = delta
  FqRat alpha, delta;
  long e1 = 0, e2 = 1;
  KRational C1, C2;
};

// Both conditions: F(alpha'^e2, delta'^e2) = 0 and F(alpha'^e2/alpha^e1 C1,
// delta'^e2/delta^e1 C2) vanishes identically in x. Throws RootWitnessInvalid when a
// supplied root fails its (q-1)-th power check.
bool check_theorem_conditions(const Fq& F, const TheoremConditionInput& in);

// C1 = (c1 - s)/(x - s) with s = beta/(1 - alpha); C2 likewise for g = delta x + gamma, or
// C2 = x (1/c2 - s2)/(1 - s2 x) when g = x/(gamma x + delta).
KRational reduced_target(const Fq& F, const KRational& c, const FqRat& fixed_point);
KRational reduced_target_inverted(const Fq& F, const KRational& c, const FqRat& s2);

struct CounterexampleStep {
  u64 m = 0;
  std::string N;          // q^m
  FqRat lambda;           // t^N
  bool f_divisible = false;
  bool g_divisible = false;
};

struct CounterexampleReport {
  u64 q = 0;
  Fq::Elem a = 0;
  FqPoly h;
  LinearMapOverK f, g;
  KPoly c;
  std::vector<CounterexampleStep> steps;
  bool all_divisible = true;
};

inline constexpr u64 kCounterexampleBudget = 4'000'000;

// f = (t h(t) + 1) x + a t h(t), g = ((t + a) h(t) + 1) x, c = x((x + a) h(x) + 1); checks
// (x - t^N) | f^N - c and g^N - c for N = q^m, m = 0..M. InvalidArgument for a = 0 or
// constant h, BudgetExceeded when q deg(h) q^M exceeds kCounterexampleBudget.
CounterexampleReport reproduce_counterexample(const Fq& F, Fq::Elem a, const FqPoly& h, u64 M);

}  // namespace itergcd
