#include "itergcd/valuation.hpp"

#include "itergcd/errors.hpp"

namespace itergcd {

namespace {

u64 euler_phi(u64 m) {
  u64 phi = m;
  for (auto [p, e] : factor_u64(m)) phi = phi / p * (p - 1);
  return phi;
}

bool pow_is_one(const Int& d, const Int& e, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), d.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r == 1 || m == 1;
}

// Descend from a multiple of the order using the prime factorization of that multiple.
Int descend_order(const Int& d, Int order, const std::vector<u64>& primes, const Int& m) {
  for (u64 q : primes) {
    while (mpz_divisible_ui_p(order.get_mpz_t(), q) != 0) {
      Int cand = order / static_cast<unsigned long>(q);
      if (!pow_is_one(d, cand, m)) break;
      order = cand;
    }
  }
  return order;
}

}  // namespace

u64 multiplicative_order(const Int& d, u64 m) {
  if (m < 2) fail(ErrorCode::InvalidArgument, "modulus must be >= 2");
  Int mm = from_u64(m);
  if (gcd(d, mm) != 1) fail(ErrorCode::NotCoprime, "gcd(d, m) != 1");
  u64 phi = euler_phi(m);
  std::vector<u64> primes;
  for (auto [q, e] : factor_u64(phi)) primes.push_back(q);
  Int dm = mod_floor(d, mm);
  return to_u64(descend_order(dm, from_u64(phi), primes, mm));
}

u64 order_mod_prime_power(const Int& d, u64 p, long L) {
  if (L < 1) fail(ErrorCode::InvalidArgument, "exponent must be >= 1");
  if (mpz_divisible_ui_p(d.get_mpz_t(), p) != 0) fail(ErrorCode::NotCoprime, "p divides d");
  Int m = ipow(from_u64(p), static_cast<u64>(L));
  Int group = ipow(from_u64(p), static_cast<u64>(L - 1)) * static_cast<unsigned long>(p - 1);
  std::vector<u64> primes;
  for (auto [q, e] : factor_u64(p - 1)) primes.push_back(q);
  primes.push_back(p);
  Int o = descend_order(mod_floor(d, m), group, primes, m);
  if (mpz_sizeinbase(o.get_mpz_t(), 2) > 62) fail(ErrorCode::BudgetExceeded, "order exceeds 62 bits");
  return to_u64(o);
}

std::vector<EPS> profile_levels(u64 p, const Int& d, const Int& t, long jmax) {
  std::vector<EPS> out;
  const Int P = from_u64(p);
  if (jmax < 1) return out;

  if (mpz_divisible_ui_p(d.get_mpz_t(), p) == 0) {
    if (mpz_divisible_ui_p(t.get_mpz_t(), p) != 0) return out;  // d^n is a unit, t is not
    // level j: either empty or the single class r mod ord_{p^j}(d)
    u64 o = order_mod_prime_power(d, p, 1);
    Int mod = P;
    u64 r = 0;
    bool found = false;
    for (u64 n = 0; n < o; ++n) {
      Int x;
      mpz_powm_ui(x.get_mpz_t(), d.get_mpz_t(), n, mod.get_mpz_t());
      if (x == mod_floor(t, mod)) {
        r = n;
        found = true;
        break;
      }
    }
    if (!found) return out;
    out.push_back(EPS::residue_class(r, o));
    for (long j = 2; j <= jmax; ++j) {
      u64 o2 = order_mod_prime_power(d, p, j);
      mod *= P;
      Int tm = mod_floor(t, mod);
      found = false;
      for (u64 i = 0; i < o2 / o; ++i) {
        u64 n = r + i * o;
        Int x;
        mpz_powm_ui(x.get_mpz_t(), d.get_mpz_t(), n, mod.get_mpz_t());
        if (x == tm) {
          r = n;
          found = true;
          break;
        }
      }
      if (!found) return out;
      o = o2;
      out.push_back(EPS::residue_class(r, o));
    }
    return out;
  }

  // p | d: v_p(d^n - t) is explicit except at finitely many small n
  std::vector<long> head;  // exact v for n < head.size()
  long tail;               // value for all n >= head.size(), or growth marker
  bool tail_grows = false;
  long w = 0;
  if (sgn(d) == 0) {
    head.push_back(valuation(Int(1) - t, P));
    tail = valuation(t, P);
  } else {
    w = valuation(d, P);
    if (sgn(t) == 0) {
      tail_grows = true;  // v = n*w
      tail = 0;
    } else {
      long vt = valuation(t, P);
      long n_end = vt / w + 1;
      Int pw = 1;
      for (long n = 0; n < n_end; ++n) {
        head.push_back(valuation(pw - t, P));
        pw *= d;
      }
      tail = vt;
    }
  }
  for (long j = 1; j <= jmax; ++j) {
    EPS s;
    if (tail_grows) {
      s = EPS::at_least(static_cast<u64>((j + w - 1) / w));
    } else {
      std::vector<u64> ex;
      for (size_t n = 0; n < head.size(); ++n)
        if (head[n] >= j) ex.push_back(n);
      s = EPS::finite(ex);
      if (tail >= j) s = eps_union(s, EPS::at_least(head.size()));
    }
    if (s.is_empty()) return out;
    out.push_back(s);
  }
  return out;
}

ValuationProfile valuation_profile(u64 p, const Int& d, const Int& t, long jmax, u64 cap) {
  if (!is_prime_u64(p)) fail(ErrorCode::InvalidArgument, "p must be prime");
  if (jmax < 1) fail(ErrorCode::InvalidArgument, "jmax must be positive");
  Int pj = ipow(from_u64(p), static_cast<u64>(jmax));
  if (pj > from_u64(cap)) fail(ErrorCode::CapExceeded, "p^jmax exceeds the configured cap");
  ValuationProfile vp;
  vp.prime = p;
  auto lv = profile_levels(p, d, t, jmax);
  for (long j = 1; j <= jmax; ++j) {
    EPS s = static_cast<size_t>(j) <= lv.size() ? lv[j - 1] : EPS::empty();
    vp.levels.emplace_back(j, s);
  }
  return vp;
}

}  // namespace itergcd
