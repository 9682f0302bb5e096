#include "itergcd/power_systems.hpp"

#include <map>

#include "itergcd/errors.hpp"

namespace itergcd {

GeneralPowerSystem to_general(const PowerSystemInstance& inst) {
  if (inst.k == 0) fail(ErrorCode::InvalidArgument, "k must be positive");
  for (u64 x : {inst.a, inst.b, inst.c1, inst.c2})
    if (x >= inst.k) fail(ErrorCode::InvalidArgument, "exponents must be < k");
  if (inst.d1 < 2 || inst.d2 < 2) fail(ErrorCode::InvalidArgument, "d1 and d2 must exceed 1");
  if (inst.d3 < 0) fail(ErrorCode::InvalidArgument, "d3 must be non-negative");
  return GeneralPowerSystem{inst.k,          from_u64(inst.a), from_u64(inst.b),
                            from_u64(inst.c1), from_u64(inst.c2), inst.d1,
                            inst.d2,         inst.d3,          inst.d3};
}

bool lemma_criterion(u64 k, const Int& ap, const Int& bp, const Int& A, const Int& B) {
  if (sgn(A) <= 0 || sgn(B) <= 0)
    fail(ErrorCode::NonpositiveExponentGap, "exponent gaps must be positive");
  return lemma_criterion_signed(k, ap, bp, A, B);
}

bool lemma_criterion_signed(u64 k, const Int& ap, const Int& bp, const Int& A, const Int& B) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "k must be positive");
  const Int K = from_u64(k);
  if (sgn(A) == 0 && sgn(B) == 0) return mod_floor(ap, K) == 0 && mod_floor(bp, K) == 0;
  Int g;
  mpz_gcd(g.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
  Int x = bp * A - ap * B;
  g *= K;
  return mpz_divisible_p(x.get_mpz_t(), g.get_mpz_t()) != 0;
}

namespace {

// x^A = xi^a with A >= 0 after sign normalization
void normalize(Int& A, Int& ap) {
  if (sgn(A) < 0) {
    A = -A;
    ap = -ap;
  }
}

}  // namespace

bool lemma_bruteforce_oracle(u64 k, const Int& ap0, const Int& bp0, const Int& A0,
                             const Int& B0) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "k must be positive");
  Int A = A0, B = B0, ap = ap0, bp = bp0;
  normalize(A, ap);
  normalize(B, bp);
  // x^0 = 1, so a zero exponent forces its right-hand side to be 1
  if (sgn(A) == 0 && mod_u64(ap, k) != 0) return false;
  if (sgn(B) == 0 && mod_u64(bp, k) != 0) return false;
  if (sgn(A) == 0 && sgn(B) == 0) return true;
  if (sgn(A) == 0) {
    std::swap(A, B);
    std::swap(ap, bp);
  }
  Int N = from_u64(k) * A;
  if (sgn(B) != 0) mpz_lcm(N.get_mpz_t(), N.get_mpz_t(), Int(from_u64(k) * B).get_mpz_t());
  if (N > from_u64(kLemmaOracleCap))
    fail(ErrorCode::CapExceeded, "oracle modulus " + N.get_str() + " exceeds 10^6");
  const u64 n = to_u64(N), a = to_u64(A), b = to_u64(B);
  const u64 ar = mod_u64(ap, k), br = mod_u64(bp, k);
  // every solution of x^A = xi^a' has order dividing kA | N; they are e0 + j N/A
  const u64 step = n / a;
  const u64 e0 = ar * (n / (k * a));
  const u64 target = br * (n / k) % n;
  for (u64 j = 0; j < a; ++j) {
    u64 e = (e0 + j * step) % n;
    if (b == 0 || mulmod(e, b, n) == target) return true;
  }
  return false;
}

std::optional<RootWitness> lemma_witness(u64 k, const Int& ap0, const Int& bp0, const Int& A0,
                                         const Int& B0) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "k must be positive");
  Int A = A0, B = B0, ap = ap0, bp = bp0;
  normalize(A, ap);
  normalize(B, bp);
  const Int K = from_u64(k);
  if (sgn(A) == 0 && mod_floor(ap, K) != 0) return std::nullopt;
  if (sgn(B) == 0 && mod_floor(bp, K) != 0) return std::nullopt;
  if (sgn(A) == 0 && sgn(B) == 0) return RootWitness{0, 1};
  if (sgn(A) == 0) {
    std::swap(A, B);
    std::swap(ap, bp);
  }
  Int L = K * A;
  if (sgn(B) != 0) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), Int(K * B).get_mpz_t());
  const Int ta = mod_floor(ap, K) * (L / K);  // target for e*A mod L
  const Int tb = mod_floor(bp, K) * (L / K);
  Int e = ta / A;  // e*A = ta exactly; the general solution adds multiples of L/A
  if (sgn(B) != 0) {
    const Int step = L / A;
    Int coef = mod_floor(B * step, L);
    Int rhs = mod_floor(tb - B * e, L);
    Int g;
    mpz_gcd(g.get_mpz_t(), coef.get_mpz_t(), L.get_mpz_t());
    if (!mpz_divisible_p(rhs.get_mpz_t(), g.get_mpz_t())) return std::nullopt;
    Int m = L / g, t = 0;
    if (m > 1) {
      Int inv;
      Int c = coef / g;
      if (mpz_invert(inv.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t()) == 0)
        fail(ErrorCode::InvalidArgument, "internal: non-invertible reduced coefficient");
      t = mod_floor((rhs / g) * inv, m);
    }
    e += t * step;
  }
  e = mod_floor(e, L);
  if (mod_floor(e * A - ta, L) != 0 || (sgn(B) != 0 && mod_floor(e * B - tb, L) != 0))
    fail(ErrorCode::InvalidArgument, "internal: constructed witness fails verification");
  return RootWitness{e, L};
}

namespace {

// exponent of xi in (xi^a x^d)^n: a (d^n - 1)/(d - 1)
Int iterate_exponent(const Int& a, const Int& d, u64 n) {
  if (d == 1) return a * from_u64(n);
  return a * ((ipow(d, n) - 1) / (d - 1));
}

bool decide(u64 k, const Int& ap, const Int& bp, const Int& A, const Int& B) {
  Int n = abs(A);
  if (sgn(B) != 0) mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), Int(abs(B)).get_mpz_t());
  if (sgn(n) == 0) n = 1;
  if (from_u64(k) * n <= from_u64(kLemmaOracleCap)) return lemma_bruteforce_oracle(k, ap, bp, A, B);
  return lemma_witness(k, ap, bp, A, B).has_value();
}

}  // namespace

bool power_system_solvable_at(const GeneralPowerSystem& sys, u64 n) {
  const Int K = from_u64(sys.k);
  Int A = ipow(sys.d1, n) - sys.d3;
  Int B = ipow(sys.d2, n) - sys.d4;
  Int ap = mod_floor(sys.c1 - iterate_exponent(sys.a, sys.d1, n), K);
  Int bp = mod_floor(sys.c2 - iterate_exponent(sys.b, sys.d2, n), K);
  return decide(sys.k, ap, bp, A, B);
}

PowerSystemResult power_system_index_set(const PowerSystemInstance& inst, u64 horizon,
                                         u64 validation_window) {
  return power_system_index_set(to_general(inst), horizon, validation_window);
}

PowerSystemResult power_system_index_set(const GeneralPowerSystem& sys, u64 horizon,
                                         u64 validation_window) {
  if (sys.k == 0) fail(ErrorCode::InvalidArgument, "k must be positive");
  if (sys.d1 < 2 || sys.d2 < 2) fail(ErrorCode::InvalidArgument, "d1 and d2 must exceed 1");
  const u64 k = sys.k;
  PowerSystemResult res;

  {
    Int p1 = 1, p2 = 1;
    u64 n = 0;
    while (!(p1 > sys.d3 && p2 > sys.d4)) {
      p1 *= sys.d1;
      p2 *= sys.d2;
      ++n;
    }
    res.n_min = n;
  }

  // orbit of (0, 0) under (e1, e2) -> (d1 e1 + a, d2 e2 + b) mod k
  std::vector<std::pair<u64, u64>> states;
  std::map<std::pair<u64, u64>, u64> first_seen;
  {
    const u64 d1 = mod_u64(sys.d1, k), d2 = mod_u64(sys.d2, k);
    const u64 a = mod_u64(sys.a, k), b = mod_u64(sys.b, k);
    std::pair<u64, u64> s{0, 0};
    while (!first_seen.count(s)) {
      first_seen[s] = states.size();
      states.push_back(s);
      s = {(mulmod(d1, s.first, k) + a) % k, (mulmod(d2, s.second, k) + b) % k};
    }
    res.tracker_preperiod = first_seen[s];
    res.tracker_period = states.size() - res.tracker_preperiod;
  }
  const u64 pre = res.tracker_preperiod, per = res.tracker_period;
  res.first_structural = std::max(res.n_min, pre);
  const u64 n1 = res.first_structural;

  // below n1 the gcd criterion may not apply (A = B = 0) or the tracker is not yet periodic
  std::vector<u64> small;
  for (u64 n = 0; n < n1; ++n)
    if (power_system_solvable_at(sys, n)) small.push_back(n);
  EPS set = EPS::finite(small);
  bool certified = true;

  const Int K = from_u64(k);
  for (u64 s = 0; s < per; ++s) {
    PowerSystemClass cls;
    cls.residue = (pre + s) % per;
    cls.e1 = states[pre + s].first;
    cls.e2 = states[pre + s].second;
    GcdSetInstance g{sys.d1,
                     sys.d2,
                     sys.d3,
                     sys.d4,
                     mod_floor(sys.c1 - from_u64(cls.e1), K),
                     mod_floor(sys.c2 - from_u64(cls.e2), K),
                     k};
    cls.gcd = gcd_progression_set(g, validation_window);
    certified = certified && cls.gcd.set.certified;
    EPS piece = eps_intersect(eps_intersect(cls.gcd.set, EPS::residue_class(cls.residue, per)),
                              EPS::at_least(n1));
    set = eps_union(set, piece);
    res.classes.push_back(std::move(cls));
  }
  set.certified = certified;

  u64 h = std::min(horizon, set.threshold + 2 * set.period);
  h = std::max(h, std::min<u64>(horizon, n1 + 2 * per));
  for (u64 n = 0; n < h; ++n) {
    if (power_system_solvable_at(sys, n) != set.contains(n))
      fail(ErrorCode::ValidationMismatch,
           "power-system set " + set.to_string() + " disagrees with the per-n oracle at n=" +
               std::to_string(n));
  }
  res.validated_upto = h;
  res.set = set;
  return res;
}

}  // namespace itergcd
