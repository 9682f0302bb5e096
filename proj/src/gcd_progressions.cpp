#include "itergcd/gcd_progressions.hpp"

#include <algorithm>
#include <sstream>

#include "itergcd/errors.hpp"
#include "itergcd/valuation.hpp"

namespace itergcd {

std::string GcdSetInstance::to_string() const {
  std::ostringstream os;
  os << "(d1=" << d1 << ", d2=" << d2 << ", d3=" << d3 << ", d4=" << d4 << ", a=" << a
     << ", b=" << b << ", k=" << k << ")";
  return os.str();
}

const char* case_tag_name(CaseTag t) {
  switch (t) {
    case CaseTag::CaseI: return "CaseI";
    case CaseTag::CaseIIRootOfUnity: return "CaseII-RootOfUnity";
    case CaseTag::CaseIIIZero: return "CaseIII-Zero";
    case CaseTag::DegenerateDependence: return "Degenerate-Dependence";
    case CaseTag::ZeroOrUnitBase: return "ZeroOrUnitBase";
  }
  return "?";
}

const char* mechanism_name(Mechanism m) {
  switch (m) {
    case Mechanism::ExactZero: return "ExactZero";
    case Mechanism::LinkedClass: return "LinkedClass";
    case Mechanism::RootOfUnityTower: return "RootOfUnityTower";
    case Mechanism::ZeroTower: return "ZeroTower";
    case Mechanism::BoundedValuation: return "BoundedValuation";
    case Mechanism::Heuristic: return "Heuristic";
  }
  return "?";
}

u64 bruteforce_horizon_limit(const GcdSetInstance& inst) {
  size_t digits = 0;
  for (const Int* d : {&inst.d1, &inst.d2})
    if (abs(*d) > 1) digits = std::max(digits, mpz_sizeinbase(d->get_mpz_t(), 10));
  if (digits == 0) return u64{1} << 40;
  return static_cast<u64>(kBruteForceDigitBudget) / digits;
}

std::vector<bool> gcd_set_bruteforce(const GcdSetInstance& inst, u64 horizon) {
  if (horizon > bruteforce_horizon_limit(inst))
    fail(ErrorCode::BudgetExceeded, "brute-force horizon " + std::to_string(horizon) +
                                        " exceeds the digit budget for " + inst.to_string());
  std::vector<bool> out(horizon);
  const Int k = from_u64(inst.k);
  Int p1 = 1, p2 = 1, A, B, g, X;
  for (u64 n = 0; n < horizon; ++n) {
    A = p1 - inst.d3;
    B = p2 - inst.d4;
    mpz_gcd(g.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
    if (sgn(g) == 0) {
      out[n] = true;  // 0 | 0
    } else {
      X = inst.b * A - inst.a * B;
      g *= k;
      out[n] = mpz_divisible_p(X.get_mpz_t(), g.get_mpz_t()) != 0;
    }
    p1 *= inst.d1;
    p2 *= inst.d2;
  }
  return out;
}

std::optional<u64> multiplicative_dependence(const Int& d1, const Int& d2) {
  if (d1 == d2) return 1;
  if (sgn(d1) != 0 && d1 == -d2) return 2;
  return std::nullopt;
}

CaseTag case_classify(u64 /*p*/, const GcdSetInstance& inst) {
  auto zero_or_unit = [](const Int& d) { return abs(d) <= 1; };
  if (zero_or_unit(inst.d1) || zero_or_unit(inst.d2)) return CaseTag::ZeroOrUnitBase;
  if (multiplicative_dependence(inst.d1, inst.d2)) return CaseTag::DegenerateDependence;
  if (abs(inst.d3) == 1) return CaseTag::CaseIIRootOfUnity;
  if (sgn(inst.d3) == 0) return CaseTag::CaseIIIZero;
  return CaseTag::CaseI;
}

namespace {

bool divisible(const Int& x, u64 p) { return mpz_divisible_ui_p(x.get_mpz_t(), p) != 0; }

// {n : d^n = t} exactly, with 0^0 = 1.
EPS zero_set(const Int& d, const Int& t) {
  if (d == 1) return t == 1 ? EPS::all() : EPS::empty();
  if (d == -1) {
    if (t == 1) return EPS::residue_class(0, 2);
    if (t == -1) return EPS::residue_class(1, 2);
    return EPS::empty();
  }
  if (sgn(d) == 0) {
    if (t == 1) return EPS::finite({0});
    if (sgn(t) == 0) return EPS::at_least(1);
    return EPS::empty();
  }
  Int pw = 1;
  for (u64 n = 0; abs(pw) <= abs(t); ++n, pw *= d)
    if (pw == t) return EPS::finite({n});
  return EPS::empty();
}

EPS level(u64 p, const Int& d, const Int& t, long j) {
  auto lv = profile_levels(p, d, t, j);
  return static_cast<long>(lv.size()) >= j ? lv[j - 1] : EPS::empty();
}

// Exact truth of v_p(bA - aB) >= e + min(v_p A, v_p B) on [0, len).
class PrimeEvaluator {
 public:
  PrimeEvaluator(const GcdSetInstance& inst, u64 p, long e)
      : inst_(inst), p_(p), e_(e), M_(64 + e), za_(zero_set(inst.d1, inst.d3)),
        zb_(zero_set(inst.d2, inst.d4)) {
    ppow_.resize(M_ + 1);
    ppow_[0] = 1;
    for (long i = 1; i <= M_; ++i) ppow_[i] = ppow_[i - 1] * from_u64(p);
    mod_ = ppow_[M_];
    d1m_ = mod_floor(inst.d1, mod_);
    d2m_ = mod_floor(inst.d2, mod_);
    d3m_ = mod_floor(inst.d3, mod_);
    d4m_ = mod_floor(inst.d4, mod_);
    am_ = mod_floor(inst.a, mod_);
    bm_ = mod_floor(inst.b, mod_);
    w1_ = sgn(inst.d1) ? valuation(inst.d1, p) : 0;
    w2_ = sgn(inst.d2) ? valuation(inst.d2, p) : 0;
    va_ok_ = valuation(inst.a, p) >= e;
    vb_ok_ = valuation(inst.b, p) >= e;
  }

  std::vector<bool> window(u64 len) {
    std::vector<bool> out(len);
    Int r1 = 1, r2 = 1;
    for (u64 n = 0; n < len; ++n) {
      out[n] = at(n, r1, r2);
      r1 = (r1 * d1m_) % mod_;
      r2 = (r2 * d2m_) % mod_;
    }
    return out;
  }

 private:
  static constexpr long kUnknown = -1;

  // v_p(d^n - t) from the residue, kInfVal on exact zeros, kUnknown when >= M and not exact
  long val(u64 n, const EPS& zs, const Int& d, const Int& t, long w, const Int& res) const {
    if (zs.contains(n)) return kInfVal;
    if (sgn(t) == 0 && sgn(d) != 0) return static_cast<long>(n) * w;
    if (sgn(res) != 0) return valuation(res, p_);
    return kUnknown;
  }

  bool at(u64 n, const Int& r1, const Int& r2) {
    Int Ares = mod_floor(r1 - d3m_, mod_);
    Int Bres = mod_floor(r2 - d4m_, mod_);
    long vA = val(n, za_, inst_.d1, inst_.d3, w1_, Ares);
    long vB = val(n, zb_, inst_.d2, inst_.d4, w2_, Bres);
    if (vA == kInfVal && vB == kInfVal) return true;
    if (vA == kInfVal) return va_ok_;  // X = -aB
    if (vB == kInfVal) return vb_ok_;  // X = bA
    long m;
    if (vA == kUnknown && vB == kUnknown) return exact(n);
    if (vA == kUnknown) m = vB < M_ ? vB : -1;
    else if (vB == kUnknown) m = vA < M_ ? vA : -1;
    else m = std::min(vA, vB);
    if (m < 0 || e_ + m > M_) return exact(n);
    Int X = mod_floor(bm_ * Ares - am_ * Bres, mod_);
    return mpz_divisible_p(X.get_mpz_t(), ppow_[e_ + m].get_mpz_t()) != 0;
  }

  bool exact(u64 n) const {
    Int A = ipow(inst_.d1, n) - inst_.d3;
    Int B = ipow(inst_.d2, n) - inst_.d4;
    Int X = inst_.b * A - inst_.a * B;
    long m = std::min(valuation(A, p_), valuation(B, p_));
    if (m == kInfVal) return true;
    return valuation(X, p_) >= e_ + m;
  }

  const GcdSetInstance& inst_;
  u64 p_;
  long e_, M_;
  EPS za_, zb_;
  std::vector<Int> ppow_;
  Int mod_, d1m_, d2m_, d3m_, d4m_, am_, bm_;
  long w1_ = 0, w2_ = 0;
  bool va_ok_ = false, vb_ok_ = false;
};

struct Bounds {
  u64 threshold = 0;
  u64 period = 1;
  void add(u64 n0, u64 per) {
    threshold = std::max(threshold, n0);
    period = lcm_u64(period, per);
  }
  void add(const EPS& s) { add(s.threshold, s.period); }
};

// (threshold, period) after which d^n mod p^L is periodic
std::pair<u64, u64> residue_params(u64 p, const Int& d, long L) {
  if (sgn(d) == 0) return {1, 1};
  if (divisible(d, p)) {
    long w = valuation(d, p);
    return {static_cast<u64>((L + w - 1) / w), 1};
  }
  return {0, order_mod_prime_power(d, p, L)};
}

std::optional<long> ascend(u64 p, const Int& d1, const Int& t1, const Int& d2, const Int& t2,
                           const EPS& domain, std::vector<EPS>* levels) {
  for (long j = 1; j <= 64; ++j) {
    EPS s = eps_intersect(eps_intersect(level(p, d1, t1, j), level(p, d2, t2, j)), domain);
    if (s.is_empty()) return j - 1;
    if (levels) levels->push_back(s);
  }
  return std::nullopt;
}

}  // namespace

ValuationBound gcd_valuation_bound(u64 p, const Int& d1, const Int& d2, const Int& d3) {
  if (!is_prime_u64(p)) fail(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  if (abs(d3) <= 1) fail(ErrorCode::InvalidArgument, "target must not be 0 or a root of unity");
  if (multiplicative_dependence(d1, d2))
    fail(ErrorCode::InvalidArgument, "bases are multiplicatively dependent");
  ValuationBound out;
  std::optional<long> ell;
  try {
    ell = ascend(p, d1, d3, d2, d3, EPS::all(), &out.levels);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::BudgetExceeded) throw;
    fail(ErrorCode::CapExceeded, std::string("valuation ascent too large: ") + err.what());
  }
  if (!ell) fail(ErrorCode::CapExceeded, "valuation ascent did not terminate by level 64");
  out.ell = *ell;
  return out;
}

std::vector<EPS> case_one_strata(u64 p, const Int& d1, const Int& d2, const Int& d3) {
  ValuationBound vb = gcd_valuation_bound(p, d1, d2, d3);
  std::vector<EPS> out;
  EPS prev = EPS::all();
  for (const EPS& s : vb.levels) {
    out.push_back(eps_difference(prev, s));
    prev = s;
  }
  out.push_back(prev);
  return out;
}

PrimeRecord prime_condition_set(const GcdSetInstance& inst, u64 p, u64 heuristic_window) {
  PrimeRecord rec;
  rec.p = p;
  rec.e = valuation_u64(inst.k, p);
  rec.tag = case_classify(p, inst);
  const long e = rec.e;
  const Int& d1 = inst.d1;
  const Int& d2 = inst.d2;
  const Int& t1 = inst.d3;
  const Int& t2 = inst.d4;

  Bounds bounds;
  EPS covered = EPS::empty();
  auto cover = [&](const EPS& s) {
    bounds.add(s);
    covered = eps_union(covered, s);
  };

  // exact zeros of either bracket: truth is constant there
  EPS za = zero_set(d1, t1), zb = zero_set(d2, t2);
  if (!za.is_empty() || !zb.is_empty()) rec.mechanisms.push_back(Mechanism::ExactZero);
  cover(za);
  cover(zb);

  // B = sigma * A identically on a residue class: truth is [A = 0] or [v_p(b - sigma a) >= e]
  if (d1 == d2 && t1 == t2) {
    cover(EPS::all());
    rec.mechanisms.push_back(Mechanism::LinkedClass);
  } else if (sgn(d1) != 0 && d1 == -d2 && (t2 == t1 || t2 == -t1)) {
    if (t2 == t1) cover(EPS::residue_class(0, 2));
    if (t2 == -t1) cover(EPS::residue_class(1, 2));
    rec.mechanisms.push_back(Mechanism::LinkedClass);
  }

  // d_i = mu_i * omega_i with mu_i a root of unity and omega_i a principal unit. On classes
  // where mu_i^n = t_i for both i, v_p(d_i^n - t_i) = v_p(n) + beta_i, and X/n expands in
  // powers of n whose tail terms vanish mod p^(e + beta_min) once n is fixed mod p^R.
  if (abs(t1) == 1 && abs(t2) == 1 && abs(d1) >= 2 && abs(d2) >= 2 && !divisible(d1, p) &&
      !divisible(d2, p)) {
    const u64 T = p == 2 ? 2 : p - 1;
    const u64 m = p == 2 ? 4 : p;
    EPS tower = EPS::empty();
    for (u64 r = 0; r < T; ++r) {
      if (powmod(mod_u64(d1, m), r, m) == mod_u64(t1, m) &&
          powmod(mod_u64(d2, m), r, m) == mod_u64(t2, m))
        tower = eps_union(tower, EPS::residue_class(r, T));
    }
    tower = eps_intersect(tower, EPS::at_least(1));
    if (!tower.is_empty()) {
      const Int TI = from_u64(T);
      long vT = valuation_u64(T, p);
      long b1 = valuation(ipow(d1, T) - 1, p) - vT;
      long b2 = valuation(ipow(d2, T) - 1, p) - vT;
      long bmin = std::min(b1, b2);
      long G = e + bmin;
      long tail = kInfVal;
      for (long j = 2; j <= 2 * G + 4; ++j) {
        long vf = 0;  // v_p(j!)
        for (u64 q = p; q <= static_cast<u64>(j); q *= p) vf += j / static_cast<long>(q);
        tail = std::min(tail, j * bmin - vf);
      }
      long R = std::max(0L, G - tail);
      u64 pr = 1;
      for (long i = 0; i < R; ++i) {
        if (pr > kPrimeWindowCap) fail(ErrorCode::BudgetExceeded, "tower period too large");
        pr *= p;
      }
      cover(tower);
      bounds.add(1, lcm_u64(T, pr));
      rec.mechanisms.push_back(Mechanism::RootOfUnityTower);
      rec.growth_law = "v_p(d_i^n - t_i) = v_p(n) + beta_i on the tower classes, beta = (" +
                       std::to_string(b1) + ", " + std::to_string(b2) + "), R = " +
                       std::to_string(R);
    }
  }

  // both brackets are pure powers divisible by p: v_p grows linearly, the unit parts cycle
  if (sgn(t1) == 0 && sgn(t2) == 0 && sgn(d1) != 0 && sgn(d2) != 0 && divisible(d1, p) &&
      divisible(d2, p)) {
    long w1 = valuation(d1, p), w2 = valuation(d2, p);
    Int u1 = d1, u2 = d2;
    for (long i = 0; i < w1; ++i) u1 /= from_u64(p);
    for (long i = 0; i < w2; ++i) u2 /= from_u64(p);
    u64 per = lcm_u64(order_mod_prime_power(u1, p, e), order_mod_prime_power(u2, p, e));
    cover(EPS::at_least(1));
    bounds.add(static_cast<u64>(e) + 1, per);
    rec.mechanisms.push_back(Mechanism::ZeroTower);
    rec.growth_law = "v_p(d_i^n) = n * " + std::string("(") + std::to_string(w1) + ", " +
                     std::to_string(w2) + ")";
  }

  // everything else: min(v_p A, v_p B) is bounded by ell, so truth depends on A, B mod p^(e+ell)
  EPS rest = eps_complement(covered);
  bool heuristic = false;
  if (!rest.is_empty()) {
    try {
      std::optional<long> ell = ascend(p, d1, t1, d2, t2, rest, nullptr);
      if (ell) {
        rec.ell = *ell;
        long L = e + *ell;
        bounds.add(rest);
        auto [n1, p1] = residue_params(p, d1, L);
        auto [n2, p2] = residue_params(p, d2, L);
        bounds.add(n1, p1);
        bounds.add(n2, p2);
        rec.mechanisms.push_back(Mechanism::BoundedValuation);
      } else {
        heuristic = true;
      }
    } catch (const Error& err) {
      if (err.code() != ErrorCode::BudgetExceeded) throw;
      heuristic = true;
    }
  }

  PrimeEvaluator ev(inst, p, e);
  if (heuristic) {
    rec.mechanisms.push_back(Mechanism::Heuristic);
    std::vector<bool> w = ev.window(heuristic_window);
    rec.set = detect_period(w);
    rec.threshold = rec.set.threshold;
    rec.period = rec.set.period;
    return rec;
  }
  if (bounds.threshold + bounds.period > kPrimeWindowCap)
    fail(ErrorCode::BudgetExceeded, "per-prime window " + std::to_string(bounds.threshold) + "+" +
                                        std::to_string(bounds.period) + " at p=" +
                                        std::to_string(p) + " for " + inst.to_string());
  rec.threshold = bounds.threshold;
  rec.period = bounds.period;
  std::vector<bool> w = ev.window(bounds.threshold + bounds.period);
  rec.set = EPS::from_predicate(bounds.threshold, bounds.period, [&](u64 n) { return w[n]; });
  return rec;
}

GcdSetResult gcd_progression_set(const GcdSetInstance& inst, u64 validation_window) {
  if (inst.k == 0) fail(ErrorCode::InvalidArgument, "k must be positive");
  GcdSetResult res;
  GcdSetCertificate& cert = res.certificate;
  cert.dependence_witness = multiplicative_dependence(inst.d1, inst.d2);
  EPS set = EPS::all();
  for (auto [p, mult] : factor_u64(inst.k)) {
    (void)mult;
    PrimeRecord rec = prime_condition_set(inst, p, std::max<u64>(validation_window, 512));
    cert.threshold = std::max(cert.threshold, rec.threshold);
    cert.period = lcm_u64(cert.period, rec.period);
    if (std::find(rec.mechanisms.begin(), rec.mechanisms.end(), Mechanism::Heuristic) !=
        rec.mechanisms.end())
      cert.heuristic = true;
    set = eps_intersect(set, rec.set);
    cert.primes.push_back(std::move(rec));
  }

  u64 span = cert.threshold + 4 * std::min<u64>(cert.period, u64{1} << 40);
  u64 h = std::min({validation_window, span, bruteforce_horizon_limit(inst)});
  std::vector<bool> oracle = gcd_set_bruteforce(inst, h);
  for (u64 n = 0; n < h; ++n) {
    if (oracle[n] != set.contains(n))
      fail(ErrorCode::ValidationMismatch,
           "structural set " + set.to_string() + " disagrees with brute force at n=" +
               std::to_string(n) + " for " + inst.to_string());
  }
  cert.validated_upto = h;
  set.certified = !cert.heuristic;
  res.set = set;
  return res;
}

}  // namespace itergcd
