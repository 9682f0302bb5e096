#include "itergcd/iterate_solver.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <thread>

#include "itergcd/errors.hpp"
#include "itergcd/polygcd.hpp"

namespace itergcd {

MapSpec MapSpec::mobius(const MobiusMap& m) {
  MapSpec s;
  s.kind_ = Kind::Mobius;
  s.mob_ = m;
  return s;
}

MapSpec MapSpec::polynomial(const Poly& p) {
  if (p.degree() < 1) fail(ErrorCode::InvalidArgument, "constant map");
  if (p.degree() == 1) return mobius(MobiusMap::affine(p.coeff(1), p.coeff(0)));
  MapSpec s;
  s.kind_ = Kind::Polynomial;
  s.poly_ = p;
  return s;
}

MapSpec MapSpec::from_ratfunc(const RationalFunction& r) {
  if (auto m = mobius_from_ratfunc(r)) return mobius(*m);
  if (r.is_polynomial()) return polynomial(r.num() * (1 / r.den().lc()));
  fail(ErrorCode::InvalidArgument, "map must be Mobius or polynomial: " + r.to_string());
}

RationalFunction MapSpec::to_ratfunc() const {
  return kind_ == Kind::Mobius ? mob_.to_ratfunc() : RationalFunction(poly_);
}

RationalFunction MapSpec::iterate(u64 n, u64 degree_cap) const {
  if (kind_ == Kind::Mobius) return mobius_iterate(mob_, n).to_ratfunc();
  return RationalFunction(poly_iterate(poly_, n, degree_cap));
}

namespace {

// p with every root shared with d divided out
Poly strip_roots(Poly p, const Poly& d) {
  if (d.degree() < 1 || p.degree() < 1) return p;
  for (;;) {
    Poly g = common_factor(p, d);
    if (g.degree() < 1) return p;
    p = divmod(p, g).first;
  }
}

Poly monic_or_one(const Poly& p) { return p.degree() < 1 ? Poly::constant(1) : p.monic(); }

struct RatLess {
  bool operator()(const Rat& a, const Rat& b) const { return cmp(a, b) < 0; }
};

}  // namespace

std::optional<Poly> cleared_difference(const RationalFunction& r, const RationalFunction& c) {
  RationalFunction d = r - c;
  if (d.is_zero()) return std::nullopt;
  return strip_roots(d.num(), r.den() * c.den());
}

// ---------------------------------------------------------------------------------------
// grid scan

namespace {

using Mat = std::array<u64, 4>;  // a b c d

Mat mat_mul(const Mat& x, const Mat& y, u64 p) {
  return {(mulmod(x[0], y[0], p) + mulmod(x[1], y[2], p)) % p,
          (mulmod(x[0], y[1], p) + mulmod(x[1], y[3], p)) % p,
          (mulmod(x[2], y[0], p) + mulmod(x[3], y[2], p)) % p,
          (mulmod(x[2], y[1], p) + mulmod(x[3], y[3], p)) % p};
}

Mat mat_pow(Mat b, u64 e, u64 p) {
  Mat r{1, 0, 0, 1};
  while (e) {
    if (e & 1) r = mat_mul(r, b, p);
    e >>= 1;
    if (e) b = mat_mul(b, b, p);
  }
  return r;
}

struct ModImage {
  bool ok = false;
  ModPoly v;
};

// image of an exact row polynomial whose leading coefficient survives mod p
ModImage row_image(const Poly& P, u64 p) {
  ModImage out;
  std::vector<Int> z = primitive_integer(P);
  if (mpz_fdiv_ui(z.back().get_mpz_t(), p) == 0) return out;
  out.v = modp::from_integer(z, p);
  out.ok = true;
  return out;
}

constexpr size_t kSmall = 8;

// The prefilter runs on primes below 2^31 so products fit in 64 bits.
u64 filter_prime(u64 seed, size_t index) {
  auto is_prime = [](u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  u64 n = (1ull << 31) - 1 - (seed % 4096) * (1ull << 16);
  for (size_t found = 0;; --n)
    if (is_prime(n) && found++ == index) return n;
}

u64 inv31(u64 a, u64 p) {
  long long t = 0, nt = 1, r = static_cast<long long>(p), nr = static_cast<long long>(a % p);
  while (nr != 0) {
    long long q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  return static_cast<u64>(t < 0 ? t + static_cast<long long>(p) : t);
}

// deg gcd(P, Ng) >= 1 mod p (p < 2^31) for a low-degree Ng, without allocation: P is folded
// into its remainder by Horner steps, then Euclid runs on fixed buffers.
bool shares_factor_small(const ModPoly& P, const ModPoly& Ng, u64 p) {
  const size_t k = Ng.size() - 1;  // 1 <= k <= kSmall
  const u64 il = inv31(Ng.back(), p);
  std::array<u64, kSmall + 1> a{}, r{};
  for (size_t j = 0; j < k; ++j) a[j] = Ng[j] * il % p;
  for (size_t i = P.size(); i-- > 0;) {
    u64 top = r[k - 1];
    for (size_t j = k - 1; j > 0; --j) r[j] = (r[j - 1] + p - top * a[j] % p) % p;
    r[0] = (P[i] + p - top * a[0] % p) % p;
  }
  a[k] = 1;
  size_t da = k + 1, db = k;  // sizes of a (monic Ng) and b = r
  while (db > 0 && r[db - 1] == 0) --db;
  while (db > 0) {
    if (db == 1) return false;  // nonzero constant remainder
    const u64 is = inv31(r[db - 1], p);
    while (da >= db) {
      u64 q = a[da - 1] * is % p;
      size_t off = da - db;
      for (size_t j = 0; j < db; ++j) a[off + j] = (a[off + j] + p - q * r[j] % p) % p;
      while (da > 0 && a[da - 1] == 0) --da;
    }
    std::swap(a, r);
    std::swap(da, db);
  }
  return da >= 2;
}

bool shares_factor(const ModPoly& P, const ModPoly& Ng, u64 p) {
  if (Ng.empty()) return true;  // P is nonconstant
  if (Ng.size() == 1) return false;
  if (Ng.size() - 1 <= kSmall) return shares_factor_small(P, Ng, p);
  return modp::gcd(P, Ng, p).size() >= 2;
}

}  // namespace

GridScanReport grid_scan(const MapSpec& f, const MapSpec& g, const RationalFunction& c1,
                         const RationalFunction& c2, u64 M, u64 N, const GridScanOptions& opt) {
  GridScanReport rep;
  rep.M = M;
  rep.N = N;
  const RationalFunction X = RationalFunction::x();

  // stationary solutions: common fixed points of f, g that c1 and c2 also fix
  {
    Poly S;
    const RationalFunction parts[4] = {f.to_ratfunc(), g.to_ratfunc(), c1, c2};
    bool any = false;
    for (const auto& r : parts) {
      auto d = cleared_difference(r, X);
      if (!d) continue;  // r == x fixes everything
      S = any ? common_factor(S, *d) : monic_or_one(*d);
      any = true;
    }
    rep.stationary_factor = any ? monic_or_one(S) : Poly::constant(1);
    rep.stationary_roots = rational_roots(rep.stationary_factor);
  }
  const Poly& S = rep.stationary_factor;

  const u64 rows = opt.diagonal_only ? std::min(M, N) : M;
  const u64 cols = opt.diagonal_only ? std::min(M, N) : N;

  // exact rows
  std::vector<RationalFunction> fm(rows + 1);
  std::vector<std::optional<Poly>> P(rows + 1);  // none: degenerate or constant
  for (u64 m = 1; m <= rows; ++m) {
    fm[m] = f.iterate(m, opt.degree_cap);
    auto d = cleared_difference(fm[m], c1);
    if (!d) {
      rep.degenerate_m.push_back(m);
      continue;
    }
    Poly q = strip_roots(*d, S);
    if (q.degree() >= 1) P[m] = std::move(q);
  }
  if (g.kind() == MapSpec::Kind::Polynomial && cols > 0) {
    Int deg = ipow(Int(g.degree()), cols);
    if (deg > from_u64(opt.degree_cap))
      fail(ErrorCode::DegreeCapExceeded, "deg(g)^N exceeds the degree cap");
  }

  std::map<u64, std::optional<Poly>> Q;  // exact columns, none: degenerate or constant
  std::map<u64, RationalFunction> gn_cache;
  auto gn = [&](u64 n) -> const RationalFunction& {
    auto it = gn_cache.find(n);
    if (it == gn_cache.end()) it = gn_cache.emplace(n, g.iterate(n, opt.degree_cap)).first;
    return it->second;
  };
  std::set<u64> degenerate_n;
  auto exact_column = [&](u64 n) -> const std::optional<Poly>& {
    auto it = Q.find(n);
    if (it != Q.end()) return it->second;
    auto d = cleared_difference(gn(n), c2);
    std::optional<Poly> q;
    if (!d) {
      degenerate_n.insert(n);
    } else {
      Poly s = strip_roots(*d, S);
      if (s.degree() >= 1) q = std::move(s);
    }
    return Q.emplace(n, std::move(q)).first->second;
  };

  auto rows_for = [&](u64 n, auto&& fn) {
    if (opt.diagonal_only) {
      if (n <= rows) fn(n);
    } else {
      for (u64 m = 1; m <= rows; ++m) fn(m);
    }
  };

  // prime good for every active row, for g and for c2
  u64 prime = 0;
  std::vector<ModPoly> Pimg(rows + 1);
  ModPoly c2num, c2den;
  Mat gmat{};
  for (size_t idx = 0; idx < 64 && prime == 0; ++idx) {
    u64 p = filter_prime(opt.seed, idx);
    bool ok = modp::from_rational(c2.num(), p, c2num) && modp::from_rational(c2.den(), p, c2den);
    if (ok && g.kind() == MapSpec::Kind::Mobius) {
      const MobiusMap& G = g.as_mobius();
      bool k0 = true, k1 = true, k2 = true, k3 = true;
      gmat = {modp::reduce(G.a(), p, k0), modp::reduce(G.b(), p, k1), modp::reduce(G.c(), p, k2),
              modp::reduce(G.d(), p, k3)};
      ok = k0 && k1 && k2 && k3 &&
           (mulmod(gmat[0], gmat[3], p) + p - mulmod(gmat[1], gmat[2], p)) % p != 0;
    }
    for (u64 m = 1; m <= rows && ok; ++m) {
      if (!P[m]) continue;
      ModImage im = row_image(*P[m], p);
      ok = im.ok;
      Pimg[m] = std::move(im.v);
    }
    if (ok) prime = p;
  }

  // candidates survive the modular filter
  std::vector<std::pair<u64, u64>> candidates;
  auto filter_column = [&](u64 n, const ModPoly& Ng, std::vector<std::pair<u64, u64>>& out,
                           u64& scanned) {
    rows_for(n, [&](u64 m) {
      if (!P[m]) return;
      ++scanned;
      if (prime == 0 || shares_factor(Pimg[m], Ng, prime)) out.emplace_back(m, n);
    });
  };

  if (g.kind() == MapSpec::Kind::Mobius && prime != 0) {
    const u64 p = prime;
    auto mobius_image = [&](const Mat& A) {
      // (a x + b) den(c2) - num(c2) (c x + d)
      return modp::sub(modp::mul(ModPoly{A[1], A[0]}, c2den, p),
                       modp::mul(c2num, ModPoly{A[3], A[2]}, p), p);
    };
    unsigned T = std::max(1u, opt.threads);
    if (cols < 4096) T = 1;
    std::vector<std::vector<std::pair<u64, u64>>> parts(T);
    std::vector<std::vector<u64>> zero_cols(T);
    std::vector<u64> scanned(T, 0);
    auto work = [&](unsigned t) {
      u64 lo = 1 + cols * t / T, hi = cols * (t + 1) / T;  // [lo, hi]
      if (lo > hi) return;
      Mat A = mat_pow(gmat, lo, p);
      for (u64 n = lo; n <= hi; ++n) {
        ModPoly Ng = mobius_image(A);
        modp::trim(Ng);
        if (Ng.empty()) zero_cols[t].push_back(n);
        filter_column(n, Ng, parts[t], scanned[t]);
        A = mat_mul(A, gmat, p);
      }
    };
    if (T == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < T; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    for (unsigned t = 0; t < T; ++t) {
      candidates.insert(candidates.end(), parts[t].begin(), parts[t].end());
      rep.pairs_scanned += scanned[t];
      // a column vanishing mod p may be degenerate; decide it exactly
      for (u64 n : zero_cols[t]) exact_column(n);
    }
  } else {
    for (u64 n = 1; n <= cols; ++n) {
      const std::optional<Poly>& q = exact_column(n);
      if (!q) continue;
      ModPoly Ng;
      if (prime != 0) Ng = modp::from_integer(primitive_integer(*q), prime);
      filter_column(n, Ng, candidates, rep.pairs_scanned);
    }
  }
  std::sort(candidates.begin(), candidates.end());

  std::set<Rat, RatLess> distinct(rep.stationary_roots.begin(), rep.stationary_roots.end());
  Poly L = S;
  for (auto [m, n] : candidates) {
    const std::optional<Poly>& q = exact_column(n);
    if (!q) continue;
    ++rep.pairs_exact;
    Poly G = common_factor(*P[m], *q, opt.seed);
    if (G.degree() < 1) continue;
    GridHit h;
    h.m = m;
    h.n = n;
    h.factor = G;
    h.degree = G.degree();
    h.roots = rational_roots(G);
    for (const Rat& lam : h.roots) {
      if (ratfunc_eval(fm[m], lam) != ratfunc_eval(c1, lam) ||
          ratfunc_eval(gn(n), lam) != ratfunc_eval(c2, lam))
        fail(ErrorCode::ValidationMismatch,
             "grid root " + lam.get_str() + " fails at (" + std::to_string(m) + ", " +
                 std::to_string(n) + ")");
      distinct.insert(lam);
    }
    Poly shared = common_factor(L, G);
    L = L * divmod(G, shared).first;
    rep.hits.push_back(std::move(h));
  }
  rep.degenerate_n.assign(degenerate_n.begin(), degenerate_n.end());
  rep.distinct_rational_solutions.assign(distinct.begin(), distinct.end());
  rep.distinct_solution_lower_bound = L.degree() < 1 ? 0 : squarefree_part(L).degree();
  return rep;
}

// ---------------------------------------------------------------------------------------
// equal-index scan

const char* dml_mode_name(DmlMode m) {
  switch (m) {
    case DmlMode::Exact: return "Exact";
    case DmlMode::ModularMonteCarlo: return "ModularMonteCarlo";
    case DmlMode::FastPathPower: return "FastPathPower";
    case DmlMode::FastPathChebyshev: return "FastPathChebyshev";
  }
  return "?";
}

std::optional<std::pair<int, u64>> as_signed_monomial(const Poly& p) {
  if (p.is_zero()) return std::nullopt;
  const auto& c = p.coeffs();
  for (size_t i = 0; i + 1 < c.size(); ++i)
    if (sgn(c[i]) != 0) return std::nullopt;
  if (c.back() == 1) return std::make_pair(1, static_cast<u64>(p.degree()));
  if (c.back() == -1) return std::make_pair(-1, static_cast<u64>(p.degree()));
  return std::nullopt;
}

std::optional<std::pair<int, u64>> as_signed_chebyshev(const Poly& p) {
  if (p.degree() < 1) return std::nullopt;
  Poly t = chebyshev(static_cast<u64>(p.degree()));
  if (p == t) return std::make_pair(1, static_cast<u64>(p.degree()));
  if (p == -t) return std::make_pair(-1, static_cast<u64>(p.degree()));
  return std::nullopt;
}

std::vector<GeneralPowerSystem> monomial_systems(const Poly& f, const Poly& g, const Poly& c) {
  auto mf = as_signed_monomial(f), mg = as_signed_monomial(g), mc = as_signed_monomial(c);
  if (!mf || !mg || !mc || mf->second < 2 || mg->second < 2)
    fail(ErrorCode::InvalidArgument, "monomial fast path needs +-x^d1, +-x^d2 (d >= 2), +-x^d3");
  // (xi^a x^d1)^n = xi^c x^d3 with xi = -1
  GeneralPowerSystem s;
  s.k = 2;
  s.a = mf->first < 0 ? 1 : 0;
  s.b = mg->first < 0 ? 1 : 0;
  s.c1 = s.c2 = mc->first < 0 ? 1 : 0;
  s.d1 = from_u64(mf->second);
  s.d2 = from_u64(mg->second);
  s.d3 = s.d4 = from_u64(mc->second);
  return {s};
}

std::vector<GeneralPowerSystem> chebyshev_systems(const Poly& f, const Poly& g, const Poly& c) {
  auto tf = as_signed_chebyshev(f), tg = as_signed_chebyshev(g), tc = as_signed_chebyshev(c);
  if (!tf || !tg || !tc || tf->second < 2 || tg->second < 2)
    fail(ErrorCode::InvalidArgument, "Chebyshev fast path needs +-T_d1, +-T_d2 (d >= 2), +-T_d3");
  // With x = (u + 1/u)/2, s T_D(x) = s3 T_e(x) iff s u^D = s3 u^e or s u^D = s3 u^-e, and each
  // of the two equations picks its branch independently.
  std::vector<GeneralPowerSystem> out;
  const Int e = from_u64(tc->second);
  for (int s3 : {1, -1})
    for (int s4 : {1, -1}) {
      GeneralPowerSystem s;
      s.k = 2;
      s.a = tf->first < 0 ? 1 : 0;
      s.b = tg->first < 0 ? 1 : 0;
      s.c1 = s.c2 = tc->first < 0 ? 1 : 0;
      s.d1 = from_u64(tf->second);
      s.d2 = from_u64(tg->second);
      s.d3 = s3 * e;
      s.d4 = s4 * e;
      out.push_back(s);
    }
  return out;
}

namespace {

// h -> f(h) mod G over Q
Poly compose_mod(const Poly& f, const Poly& h, const Poly& G) {
  Poly acc;
  for (long i = f.degree(); i >= 0; --i) {
    acc = divmod(acc * h + Poly::constant(f.coeff(static_cast<size_t>(i))), G).second;
  }
  return acc;
}

// f^n == c modulo G
bool iterate_congruent(const Poly& f, u64 n, const Poly& c, const Poly& G) {
  Poly h = divmod(Poly::x(), G).second;
  for (u64 i = 0; i < n; ++i) h = compose_mod(f, h, G);
  return divmod(h - c, G).second.is_zero();
}

struct PrimeIterates {
  u64 p = 0;
  bool usable = false;
  ModPoly f, g, c;
  u64 n = 0;
  ModPoly Fn, Gn;  // f^n, g^n mod p
};

void advance(PrimeIterates& s, u64 n) {
  while (s.n < n) {
    s.Fn = modp::compose(s.f, s.Fn, s.p);
    s.Gn = modp::compose(s.g, s.Gn, s.p);
    ++s.n;
  }
}

long exact_degree_of_difference(const Poly& f, u64 n, const Poly& c, std::optional<Poly>& exact,
                                u64 cap) {
  Int D = ipow(Int(f.degree()), n);
  long dc = c.degree();
  if (D != Int(dc)) return std::max(D.get_si(), dc);
  exact = poly_iterate(f, n, cap) - c;
  return exact->degree();
}

DmlScanResult fast_path(DmlMode mode, const std::vector<GeneralPowerSystem>& systems,
                        u64 horizon, const DmlScanOptions& opt) {
  DmlScanResult r;
  r.mode = mode;
  r.horizon = horizon;
  EPS set = EPS::empty();
  bool certified = true;
  for (const auto& s : systems) {
    PowerSystemResult pr = power_system_index_set(s, std::max<u64>(horizon + 1, 64),
                                                  opt.validation_window);
    certified = certified && pr.set.certified;
    set = eps_union(set, pr.set);
    r.systems.push_back(std::move(pr));
  }
  set.certified = certified;
  r.detected = set;
  for (u64 n = 0; n <= horizon; ++n) {
    r.solvable.push_back(set.contains(n));
    r.verified.push_back(certified);
    r.gcd_degree.push_back(-1);
  }
  return r;
}

}  // namespace

DmlScanResult dml_scan(const Poly& f, const Poly& g, const Poly& c, u64 horizon,
                       const DmlScanOptions& opt) {
  if (f.degree() < 1 || g.degree() < 1)
    fail(ErrorCode::InvalidArgument, "dml_scan needs deg f, deg g >= 1");

  if (opt.use_fast_path) {
    auto mf = as_signed_monomial(f), mg = as_signed_monomial(g), mc = as_signed_monomial(c);
    if (mf && mg && mc && mf->second >= 2 && mg->second >= 2) {
      if (mc->second >= 1) {
        // x = 0 solves f^n(0) = g^n(0) = c(0) = 0 for every n
        DmlScanResult r;
        r.mode = DmlMode::FastPathPower;
        r.horizon = horizon;
        r.detected = EPS::all();
        r.solvable.assign(horizon + 1, true);
        r.verified.assign(horizon + 1, true);
        r.gcd_degree.assign(horizon + 1, -1);
        return r;
      }
      return fast_path(DmlMode::FastPathPower, monomial_systems(f, g, c), horizon, opt);
    }
    auto tf = as_signed_chebyshev(f), tg = as_signed_chebyshev(g), tc = as_signed_chebyshev(c);
    if (tf && tg && tc && tf->second >= 2 && tg->second >= 2)
      return fast_path(DmlMode::FastPathChebyshev, chebyshev_systems(f, g, c), horizon, opt);
  }

  DmlScanResult r;
  r.mode = DmlMode::Exact;
  // deg^n <= cap bounds the effective horizon
  u64 H = 0;
  {
    const Int cap = from_u64(opt.degree_cap);
    const long dmax = std::max(f.degree(), g.degree());
    Int D = dmax;
    while (H < horizon && D <= cap) {
      ++H;
      D *= dmax;
    }
  }
  r.horizon = H;
  // f^m = g^m gives f^(jm) = g^(jm): the two differences coincide on multiples of m
  u64 witness = 0;
  {
    Poly fm = f, gm = g;
    const long dmax = std::max(f.degree(), g.degree());
    for (u64 m = 1, D = dmax; m <= H && D <= 64; ++m, D *= dmax) {
      if (fm == gm) {
        witness = m;
        break;
      }
      fm = poly_compose(f, fm);
      gm = poly_compose(g, gm);
    }
  }

  std::vector<PrimeIterates> primes;
  auto prime_state = [&](size_t idx) -> PrimeIterates& {
    while (primes.size() <= idx) {
      PrimeIterates s;
      s.p = modular_prime(opt.seed, primes.size());
      s.usable = modp::from_rational(f, s.p, s.f) && modp::from_rational(g, s.p, s.g) &&
                 modp::from_rational(c, s.p, s.c);
      s.Fn = s.Gn = ModPoly{0, 1};
      primes.push_back(std::move(s));
    }
    return primes[idx];
  };

  for (u64 n = 0; n <= H; ++n) {
    const bool same = n == 0 || (witness != 0 && n % witness == 0);
    std::optional<Poly> ef, eg;
    long df = exact_degree_of_difference(f, n, c, ef, opt.degree_cap);
    long dg = same ? df : exact_degree_of_difference(g, n, c, eg, opt.degree_cap);
    if (same) eg = ef;
    const bool zf = df < 0, zg = dg < 0;
    bool solv = false, verified = true;
    long gdeg = -1;
    if (zf && zg) {
      solv = true;
    } else if (zf || zg) {
      solv = (zf ? dg : df) >= 1;
      gdeg = zf ? dg : df;
    } else if (df == 0 || dg == 0) {
      solv = false;
      gdeg = 0;
    } else if (same) {
      solv = true;
      gdeg = df;
    } else {
      size_t next = 0;
      auto images = [&](u64 p, ModPoly& A, ModPoly& B) {
        PrimeIterates& s = prime_state(next++);
        if (s.p != p) fail(ErrorCode::InvalidArgument, "internal: prime sequence out of step");
        if (!s.usable) return false;
        advance(s, n);
        A = modp::sub(s.Fn, s.c, s.p);
        B = modp::sub(s.Gn, s.c, s.p);
        return static_cast<long>(A.size()) - 1 == df && static_cast<long>(B.size()) - 1 == dg;
      };
      auto verify = [&](const Poly& G) {
        return iterate_congruent(f, n, c, G) && iterate_congruent(g, n, c, G);
      };
      // modular_gcd_search walks the same prime sequence, so the state index tracks it
      GcdSearchResult gr = modular_gcd_search(
          [&](u64 p, ModPoly& A, ModPoly& B) { return images(p, A, B); }, verify, opt.seed,
          64, 1024);
      if (gr.status == GcdSearchStatus::Coprime) {
        solv = false;
        gdeg = 0;
      } else if (gr.status == GcdSearchStatus::Verified) {
        solv = true;
        gdeg = gr.degree;
      } else {
        // sampled: three usable primes all see a common factor
        solv = gr.degree >= 1;
        gdeg = gr.degree;
        verified = false;
        r.mode = DmlMode::ModularMonteCarlo;
      }
    }
    r.solvable.push_back(solv);
    r.verified.push_back(verified);
    r.gcd_degree.push_back(gdeg);
  }
  try {
    EPS d = detect_period(r.solvable);
    d.certified = false;
    r.detected = d;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoPeriodFound) throw;
  }
  return r;
}

// ---------------------------------------------------------------------------------------
// finiteness probe

const char* finiteness_class_name(FinitenessClass c) {
  switch (c) {
    case FinitenessClass::Generic: return "Generic";
    case FinitenessClass::ExceptionalMobiusPair: return "ExceptionalMobiusPair";
    case FinitenessClass::ExceptionalAffinePair: return "ExceptionalAffinePair";
  }
  return "?";
}

FinitenessReport finiteness_probe(const MobiusMap& f, const MobiusMap& g,
                                  const RationalFunction& c, u64 horizon,
                                  const GridScanOptions& opt) {
  FinitenessReport rep;
  if (!f.is_affine()) fail(ErrorCode::InvalidArgument, "f must be affine (alpha x + beta)");
  rep.alpha = f.a() / f.d();
  rep.beta = f.b() / f.d();
  if (g.is_affine()) {
    rep.g_affine = true;
    rep.delta = g.a() / g.d();
    rep.gamma = g.b() / g.d();
  } else if (sgn(g.b()) == 0) {
    rep.gamma = g.c() / g.a();
    rep.delta = g.d() / g.a();
  } else {
    fail(ErrorCode::InvalidArgument, "g must be delta x + gamma or x/(gamma x + delta)");
  }
  if (auto rel = find_word_relation(f, g, 8))
    fail(ErrorCode::NotFree, "composition relation " + rel->first + " = " + rel->second);

  // over Q the roots of unity are +-1
  auto unit = [](const Rat& r) { return r == 1 || r == -1; };
  const Rat &al = rep.alpha, &de = rep.delta;
  if (!rep.g_affine) {
    if (unit(al / de)) {
      rep.cls = FinitenessClass::ExceptionalMobiusPair;
      rep.reason = "alpha/delta is a root of unity";
    } else if (unit(al * de)) {
      rep.cls = FinitenessClass::ExceptionalMobiusPair;
      rep.reason = "alpha*delta is a root of unity";
    }
  } else if (!unit(al) && !unit(de) && !(sgn(rep.beta) == 0 && sgn(rep.gamma) == 0)) {
    if (al / de == -1) {
      rep.cls = FinitenessClass::ExceptionalAffinePair;
      rep.reason = "alpha/delta is a root of unity other than 1";
    } else if (unit(al * al / de)) {
      rep.cls = FinitenessClass::ExceptionalAffinePair;
      rep.reason = "alpha^2/delta is a root of unity";
    } else if (unit(al / (de * de))) {
      rep.cls = FinitenessClass::ExceptionalAffinePair;
      rep.reason = "alpha/delta^2 is a root of unity";
    }
  }
  rep.predicted_finite = rep.cls == FinitenessClass::Generic;

  GridScanOptions o = opt;
  o.diagonal_only = true;
  GridScanReport gr =
      grid_scan(MapSpec::mobius(f), MapSpec::mobius(g), c, c, horizon, horizon, o);
  const long stationary = gr.stationary_factor.degree() < 1
                              ? 0
                              : squarefree_part(gr.stationary_factor).degree();
  rep.solutions_per_n.assign(horizon, stationary);
  std::set<u64> degenerate(gr.degenerate_m.begin(), gr.degenerate_m.end());
  degenerate.insert(gr.degenerate_n.begin(), gr.degenerate_n.end());
  Poly L = gr.stationary_factor;
  long total = L.degree() < 1 ? 0 : squarefree_part(L).degree();
  for (const GridHit& h : gr.hits) {
    rep.solutions_per_n[h.n - 1] += squarefree_part(h.factor).degree();
    Poly shared = common_factor(L, h.factor);
    L = L * divmod(h.factor, shared).first;
    long t = squarefree_part(L).degree();
    if (t > total) {
      total = t;
      rep.last_growth_n = static_cast<long>(h.n);
    }
  }
  for (u64 n : degenerate) rep.solutions_per_n[n - 1] = -1;  // every lambda
  rep.distinct_total = total;
  // a finite prediction is consistent when the second half of the range adds nothing new
  if (rep.predicted_finite)
    rep.consistent = degenerate.empty() && static_cast<u64>(rep.last_growth_n) * 2 <= horizon;
  return rep;
}

}  // namespace itergcd
