#include "itergcd/polygcd.hpp"

#include <functional>

#include <algorithm>
#include <mutex>

#include "itergcd/errors.hpp"

namespace itergcd {

namespace modp {

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 inv(u64 a, u64 p) {
  if (a % p == 0) fail(ErrorCode::InvalidArgument, "inverse of zero mod p");
  return powmod(a, p - 2, p);
}

ModPoly add(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) {
    u64 s = r[i] + b[i];
    r[i] = s >= p ? s - p : s;
  }
  trim(r);
  return r;
}

ModPoly sub(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] >= b[i] ? r[i] - b[i] : r[i] + p - b[i];
  trim(r);
  return r;
}

ModPoly mul(const ModPoly& a, const ModPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
  // accumulate unreduced products in 128 bits, folding before overflow
  const unsigned __int128 limit = ~static_cast<unsigned __int128>(0) >> 2;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      unsigned __int128& s = acc[i + j];
      s += static_cast<unsigned __int128>(a[i]) * b[j];
      if (s > limit) s %= p;
    }
  }
  ModPoly r(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<u64>(acc[i] % p);
  trim(r);
  return r;
}

ModPoly scale(const ModPoly& a, u64 s, u64 p) {
  ModPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mulmod(a[i], s, p);
  trim(r);
  return r;
}

ModPoly rem(const ModPoly& a, const ModPoly& b, u64 p) {
  if (b.empty()) fail(ErrorCode::InvalidArgument, "division by zero polynomial mod p");
  ModPoly r = a;
  trim(r);
  if (r.size() < b.size()) return r;
  u64 il = inv(b.back(), p);
  size_t db = b.size() - 1;
  for (size_t k = r.size(); k-- > db;) {
    if (r[k] == 0) continue;
    u64 f = mulmod(r[k], il, p);
    for (size_t j = 0; j <= db; ++j) {
      u64 t = mulmod(f, b[j], p);
      u64& x = r[k - db + j];
      x = x >= t ? x - t : x + p - t;
    }
  }
  r.resize(db);
  trim(r);
  return r;
}

ModPoly gcd(ModPoly a, ModPoly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ModPoly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  return scale(a, inv(a.back(), p), p);
}

ModPoly compose(const ModPoly& f, const ModPoly& h, u64 p) {
  ModPoly r;
  for (size_t i = f.size(); i-- > 0;) {
    r = mul(r, h, p);
    r = add(r, ModPoly{f[i]}, p);
  }
  trim(r);
  return r;
}

u64 eval(const ModPoly& f, u64 x, u64 p) {
  u64 r = 0;
  for (size_t i = f.size(); i-- > 0;) {
    r = mulmod(r, x, p) + f[i];
    if (r >= p) r -= p;
  }
  return r;
}

ModPoly from_integer(const std::vector<Int>& c, u64 p) {
  ModPoly r(c.size());
  for (size_t i = 0; i < c.size(); ++i) r[i] = mod_u64(c[i], p);
  trim(r);
  return r;
}

u64 reduce(const Rat& r, u64 p, bool& ok) {
  u64 den = mpz_fdiv_ui(r.get_den_mpz_t(), p);
  if (den == 0) {
    ok = false;
    return 0;
  }
  Int num(r.get_num());
  return mulmod(mod_u64(num, p), inv(den, p), p);
}

bool from_rational(const Poly& f, u64 p, ModPoly& out) {
  out.assign(f.coeffs().size(), 0);
  bool ok = true;
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = reduce(f.coeffs()[i], p, ok);
    if (!ok) return false;
  }
  trim(out);
  return true;
}

}  // namespace modp

u64 modular_prime(u64 seed, size_t index) {
  static std::mutex mu;
  static u64 cached_seed = ~0ull;
  static std::vector<u64> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (seed != cached_seed) {
    cache.clear();
    cached_seed = seed;
  }
  while (cache.size() <= index) {
    u64 start = cache.empty() ? (1ull << 62) - (seed % (1ull << 20)) * (1ull << 32) : cache.back();
    cache.push_back(prev_prime(start));
  }
  return cache[index];
}

namespace {

// symmetric CRT accumulation of coefficient vectors
struct CrtAccumulator {
  Int modulus = 0;
  std::vector<Int> residues;

  void add(const ModPoly& img, u64 p) {
    Int P = from_u64(p);
    if (modulus == 0) {
      residues.assign(img.size(), Int(0));
      for (size_t i = 0; i < img.size(); ++i) residues[i] = from_u64(img[i]);
      modulus = P;
      return;
    }
    u64 minv = modp::inv(mod_u64(modulus, p), p);
    for (size_t i = 0; i < residues.size(); ++i) {
      u64 cur = mod_u64(residues[i], p);
      u64 diff = img[i] >= cur ? img[i] - cur : img[i] + p - cur;
      u64 t = mulmod(diff, minv, p);
      residues[i] += modulus * from_u64(t);
    }
    modulus *= P;
  }
};

std::vector<Int> pseudo_rem(const std::vector<Int>& a, const std::vector<Int>& b) {
  // exact pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b
  std::vector<Int> r = a;
  size_t db = b.size() - 1;
  const Int& l = b.back();
  long steps = static_cast<long>(a.size()) - static_cast<long>(b.size()) + 1;
  while (r.size() >= b.size()) {
    Int lead = r.back();
    size_t shift = r.size() - b.size();
    for (auto& v : r) v *= l;
    for (size_t j = 0; j <= db; ++j) r[shift + j] -= lead * b[j];
    while (!r.empty() && sgn(r.back()) == 0) r.pop_back();
    --steps;
  }
  if (steps > 0) {
    Int f = ipow(l, static_cast<u64>(steps));
    for (auto& v : r) v *= f;
  }
  return r;
}

Int content(const std::vector<Int>& a) {
  Int g = 0;
  for (const auto& v : a) g = gcd(g, v);
  return g;
}

}  // namespace

Poly subresultant_gcd(const Poly& a0, const Poly& b0) {
  if (a0.is_zero() && b0.is_zero()) fail(ErrorCode::InvalidArgument, "gcd(0, 0)");
  if (a0.is_zero()) return b0.monic();
  if (b0.is_zero()) return a0.monic();
  std::vector<Int> A = primitive_integer(a0), B = primitive_integer(b0);
  if (A.size() < B.size()) std::swap(A, B);
  Int g = 1, h = 1;
  while (true) {
    long delta = static_cast<long>(A.size()) - static_cast<long>(B.size());
    std::vector<Int> R = pseudo_rem(A, B);
    if (R.empty()) break;
    if (R.size() == 1) return Poly::constant(1);
    A = B;
    Int div = g * ipow(h, static_cast<u64>(delta));
    for (auto& v : R) v /= div;
    B = R;
    g = A.back();
    if (delta == 0) {
      // h unchanged
    } else {
      Int num = ipow(g, static_cast<u64>(delta));
      Int den = ipow(h, static_cast<u64>(delta - 1));
      h = num / den;
    }
  }
  Int c = content(B);
  for (auto& v : B) v /= c;
  return from_integer(B).monic();
}

GcdSearchResult modular_gcd_search(
    const std::function<bool(u64, ModPoly&, ModPoly&)>& images,
    const std::function<bool(const Poly&)>& verify, u64 seed, size_t max_primes,
    long max_degree) {
  GcdSearchResult out;
  long best_deg = -1;
  CrtAccumulator acc;
  Poly last;
  size_t usable = 0;
  ModPoly ia, ib;
  for (size_t idx = 0; idx < max_primes; ++idx) {
    u64 p = modular_prime(seed, idx);
    if (!images(p, ia, ib)) continue;
    ++usable;
    ModPoly g = modp::gcd(ia, ib, p);
    long dg = static_cast<long>(g.size()) - 1;
    if (dg == 0) {
      out.status = GcdSearchStatus::Coprime;
      out.gcd = Poly::constant(1);
      out.degree = 0;
      return out;
    }
    if (best_deg >= 0 && dg > best_deg) continue;  // unlucky prime
    if (best_deg < 0 || dg < best_deg) {
      best_deg = dg;
      acc = CrtAccumulator{};
      last = Poly();
    }
    if (max_degree >= 0 && best_deg > max_degree) {
      if (usable >= 3) break;
      continue;
    }
    acc.add(g, p);
    std::vector<Rat> coeffs(acc.residues.size());
    bool ok = true;
    for (size_t i = 0; i < coeffs.size() && ok; ++i)
      ok = rational_reconstruct(acc.residues[i], acc.modulus, coeffs[i]);
    if (!ok) continue;
    Poly cand(std::move(coeffs));
    // require one stable repetition before the (costlier) exact check
    if (!(cand == last)) {
      last = cand;
      continue;
    }
    if (verify(cand)) {
      out.status = GcdSearchStatus::Verified;
      out.gcd = cand;
      out.degree = cand.degree();
      return out;
    }
  }
  out.status = GcdSearchStatus::Unverified;
  out.degree = best_deg;
  return out;
}

Poly common_factor(const Poly& a, const Poly& b, u64 seed) {
  if (a.is_zero() && b.is_zero()) fail(ErrorCode::InvalidArgument, "common_factor(0, 0)");
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.degree() == 0 || b.degree() == 0) return Poly::constant(1);
  const std::vector<Int> A = primitive_integer(a), B = primitive_integer(b);
  auto images = [&](u64 p, ModPoly& ia, ModPoly& ib) {
    if (mpz_fdiv_ui(A.back().get_mpz_t(), p) == 0 || mpz_fdiv_ui(B.back().get_mpz_t(), p) == 0)
      return false;
    ia = modp::from_integer(A, p);
    ib = modp::from_integer(B, p);
    return true;
  };
  const Poly fa = from_integer(A), fb = from_integer(B);
  auto verify = [&](const Poly& cand) {
    return divides_exactly(cand, fa) && divides_exactly(cand, fb);
  };
  GcdSearchResult r = modular_gcd_search(images, verify, seed, 400, -1);
  if (r.status != GcdSearchStatus::Unverified) return r.gcd;
  return subresultant_gcd(a, b);
}

std::vector<Rat> rational_roots(const Poly& f) {
  if (f.is_zero()) fail(ErrorCode::InvalidArgument, "roots of the zero polynomial");
  std::vector<Rat> roots;
  if (f.degree() < 1) return roots;
  Poly sf = squarefree_part(f);
  if (sgn(sf.coeff(0)) == 0) {
    roots.emplace_back(0);
    sf = divmod(sf, Poly::x()).first;
  }
  if (sf.degree() == 1) {
    roots.push_back(-sf.coeff(0) / sf.coeff(1));
  } else if (sf.degree() >= 2) {
    std::vector<Int> P = primitive_integer(sf);
    const size_t n = P.size() - 1;
    const Int& cn = P.back();
    // y = cn*x turns P into a monic integer polynomial Q whose integer roots we lift p-adically
    std::vector<Int> Q(n + 1);
    for (size_t i = 0; i <= n; ++i) Q[i] = P[i] * ipow(cn, n - i) / cn;
    Q[n] = 1;
    Int bound = 0;
    for (size_t i = 0; i < n; ++i) bound = std::max(bound, Int(abs(Q[i])));
    bound += 1;
    std::vector<Int> dQ;
    for (size_t i = 1; i <= n; ++i) dQ.push_back(Q[i] * static_cast<unsigned long>(i));
    auto evalz = [](const std::vector<Int>& c, const Int& x, const Int* mod) {
      Int r = 0;
      for (size_t i = c.size(); i-- > 0;) {
        r = r * x + c[i];
        if (mod) r = mod_floor(r, *mod);
      }
      return r;
    };
    u64 p = 3;
    for (;; p += 2) {
      if (!is_prime_u64(p)) continue;
      ModPoly qm = modp::from_integer(Q, p), dq = modp::from_integer(dQ, p);
      if (modp::gcd(qm, dq, p).size() == 1) break;
      if (p > 1000000) fail(ErrorCode::BudgetExceeded, "no squarefree reduction found");
    }
    Int P0 = from_u64(p);
    Int target = 2 * bound + 1;
    for (u64 r0 = 0; r0 < p; ++r0) {
      Int mod = P0;
      Int x = from_u64(r0);
      if (sgn(evalz(Q, x, &mod)) != 0) continue;
      while (mod < target) {
        mod = mod * mod;
        Int fx = evalz(Q, x, &mod), dfx = evalz(dQ, x, &mod);
        Int inv;
        mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), mod.get_mpz_t());
        x = mod_floor(x - fx * inv, mod);
      }
      if (x > mod / 2) x -= mod;
      if (sgn(evalz(Q, x, nullptr)) == 0) roots.emplace_back(Rat(x, cn));
    }
    for (auto& r : roots) r.canonicalize();
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace itergcd
