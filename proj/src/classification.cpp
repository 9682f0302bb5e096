#include "itergcd/classification.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "itergcd/errors.hpp"
#include "itergcd/polygcd.hpp"

namespace itergcd {

const char* class_tag_name(ClassTag t) {
  switch (t) {
    case ClassTag::CommonFixedMultiplicative: return "T12-1";
    case ClassTag::CommonFixedTranslation: return "T12-2";
    case ClassTag::NoCommonFixedMultiplicative: return "T13-1";
    case ClassTag::NoCommonFixedTranslation: return "T13-2";
  }
  return "?";
}

ClassTag class_tag_from_name(const std::string& s) {
  for (ClassTag t : {ClassTag::CommonFixedMultiplicative, ClassTag::CommonFixedTranslation,
                     ClassTag::NoCommonFixedMultiplicative, ClassTag::NoCommonFixedTranslation})
    if (s == class_tag_name(t)) return t;
  fail(ErrorCode::InvalidArgument, "unknown case tag '" + s + "'");
}

namespace {

bool multiplicative(ClassTag t) {
  return t == ClassTag::CommonFixedMultiplicative || t == ClassTag::NoCommonFixedMultiplicative;
}

bool common_fixed(ClassTag t) {
  return t == ClassTag::CommonFixedMultiplicative || t == ClassTag::CommonFixedTranslation;
}

RationalFunction rconst(const Rat& c) { return RationalFunction::constant(c); }

// (x/c - s2 x)/(1 - s2 x): the multiplier of the affine conjugate of c under x -> 1/x
RationalFunction inverted_multiplier(const RationalFunction& c, const Rat& s2) {
  const RationalFunction X = RationalFunction::x();
  return (X / c - rconst(s2) * X) / (rconst(1) - rconst(s2) * X);
}

Rat rat_pow(const Rat& r, long e) {
  Rat base = e < 0 ? Rat(1 / r) : r;
  Rat out = 1;
  for (u64 k = static_cast<u64>(e < 0 ? -e : e); k; k >>= 1) {
    if (k & 1) out *= base;
    base *= base;
  }
  return out;
}

}  // namespace

void validate(const ClassificationData& d) {
  auto bad = [](const std::string& m) { fail(ErrorCode::DegenerateData, m); };
  if (d.F.is_constant()) bad("F must be nonconstant");
  if (sgn(d.alpha) == 0 || sgn(d.delta) == 0) bad("alpha and delta must be nonzero");
  switch (d.tag) {
    case ClassTag::CommonFixedMultiplicative:
    case ClassTag::NoCommonFixedMultiplicative: {
      if (d.alpha == 1 || d.delta == 1) bad("alpha = 1 or delta = 1 in a multiplicative tag");
      if (d.p == 0 || d.q == 0) bad("p and q must be nonzero");
      if (std::gcd(d.p, d.q) != 1) bad("p and q must be coprime");
      if (sgn(d.mu) == 0) bad("mu must be nonzero");
      break;
    }
    case ClassTag::CommonFixedTranslation:
      if (d.alpha == 1) bad("alpha = 1");
      if (d.delta != 1) bad("this tag needs delta = 1");
      break;
    case ClassTag::NoCommonFixedTranslation:
      if (d.delta == 1) bad("delta = 1");
      if (d.alpha != 1) bad("this tag needs alpha = 1");
      break;
  }
  if (!multiplicative(d.tag)) {
    if (!d.B || d.B->degree() < 1) bad("translation tags need a nonconstant B");
    if (!d.d) bad("translation tags need d");
  }
}

MobiusMap map_f(const ClassificationData& d) { return MobiusMap::affine(d.alpha, d.beta); }

MobiusMap map_g(const ClassificationData& d) {
  if (common_fixed(d.tag)) return MobiusMap::affine(d.delta, d.gamma);
  return MobiusMap(1, 0, d.gamma, d.delta);
}

std::pair<RationalFunction, RationalFunction> build_c_pair(const ClassificationData& d) {
  validate(d);
  const RationalFunction X = RationalFunction::x();
  const RationalFunction& F = d.F;
  auto around = [&](const RationalFunction& mult, const Rat& s) {
    return mult * (X - rconst(s)) + rconst(s);
  };
  RationalFunction c1, c2;
  switch (d.tag) {
    case ClassTag::CommonFixedMultiplicative: {
      const Rat s = d.beta / (1 - d.alpha), s2 = d.gamma / (1 - d.delta);
      c1 = around(rconst(d.mu) * pow(F, d.p), s);
      c2 = around(pow(F, d.q), s2);
      break;
    }
    case ClassTag::CommonFixedTranslation: {
      const Rat s = d.beta / (1 - d.alpha);
      c1 = around(pow(F, *d.d), s);
      c2 = rconst(d.gamma) * ratfunc_compose(RationalFunction(*d.B), F) + X;
      break;
    }
    case ClassTag::NoCommonFixedMultiplicative: {
      const Rat s = d.beta / (1 - d.alpha), s2 = d.gamma / (1 - d.delta);
      c1 = around(rconst(d.mu) * pow(F, d.p), s);
      // affine family conjugated by x -> 1/x
      c2 = X / (pow(F, d.q) * (rconst(1) - rconst(s2) * X) + rconst(s2) * X);
      break;
    }
    case ClassTag::NoCommonFixedTranslation: {
      const Rat s2 = d.gamma / (1 - d.delta);
      c1 = rconst(d.beta) * ratfunc_compose(RationalFunction(*d.B), F) + X;
      const RationalFunction Fd = pow(F, *d.d);
      c2 = X / ((rconst(1) - Fd) * rconst(s2) * X + Fd);
      break;
    }
  }
  return {c1, c2};
}

bool verify_parametrization(const ClassificationData& d, const RationalFunction& c1,
                            const RationalFunction& c2) {
  try {
    validate(d);
    const RationalFunction X = RationalFunction::x();
    auto multiplier = [&](const RationalFunction& c, const Rat& s) {
      return (c - rconst(s)) / (X - rconst(s));
    };
    switch (d.tag) {
      case ClassTag::CommonFixedMultiplicative: {
        const Rat s = d.beta / (1 - d.alpha), s2 = d.gamma / (1 - d.delta);
        return multiplier(c1, s) == rconst(d.mu) * pow(d.F, d.p) &&
               multiplier(c2, s2) == pow(d.F, d.q);
      }
      case ClassTag::CommonFixedTranslation: {
        const Rat s = d.beta / (1 - d.alpha);
        return multiplier(c1, s) == pow(d.F, *d.d) &&
               c2 - X == rconst(d.gamma) * ratfunc_compose(RationalFunction(*d.B), d.F);
      }
      case ClassTag::NoCommonFixedMultiplicative: {
        const Rat s = d.beta / (1 - d.alpha), s2 = d.gamma / (1 - d.delta);
        if (c2.is_zero()) return false;
        return multiplier(c1, s) == rconst(d.mu) * pow(d.F, d.p) &&
               inverted_multiplier(c2, s2) == pow(d.F, d.q);
      }
      case ClassTag::NoCommonFixedTranslation: {
        const Rat s2 = d.gamma / (1 - d.delta);
        if (c2.is_zero()) return false;
        return c1 - X == rconst(d.beta) * ratfunc_compose(RationalFunction(*d.B), d.F) &&
               inverted_multiplier(c2, s2) == pow(d.F, *d.d);
      }
    }
  } catch (const Error&) {
    return false;
  }
  return false;
}

// ---------------------------------------------------------------------------------------
// relation lattice

const char* lattice_kind_name(RelationLattice::Kind k) {
  switch (k) {
    case RelationLattice::Kind::Empty: return "Empty";
    case RelationLattice::Kind::Point: return "Point";
    case RelationLattice::Kind::Line: return "Line";
    case RelationLattice::Kind::Plane: return "Plane";
  }
  return "?";
}

namespace {

using Vec = std::pair<Int, Int>;

Vec vadd(const Vec& a, const Vec& b) { return {a.first + b.first, a.second + b.second}; }
Vec vmul(const Int& t, const Vec& a) { return {t * a.first, t * a.second}; }

std::vector<long> exponents_over(const std::vector<Int>& base, const Rat& r) {
  std::vector<long> e(base.size(), 0);
  for (int side = 0; side < 2; ++side) {
    Int v = abs(side == 0 ? Int(r.get_num()) : Int(r.get_den()));
    for (size_t i = 0; i < base.size(); ++i)
      while (mpz_divisible_p(v.get_mpz_t(), base[i].get_mpz_t())) {
        v /= base[i];
        e[i] += side == 0 ? 1 : -1;
      }
    if (v != 1) fail(ErrorCode::InvalidArgument, "internal: coprime base does not span input");
  }
  return e;
}

// coset o + Z-span(G) intersected with {v : a v.m + b v.n = c} (exact) or (mod 2)
void intersect(RelationLattice& L, const Int& a, const Int& b, const Int& c, bool mod2) {
  using K = RelationLattice::Kind;
  if (L.kind == K::Empty) return;
  auto phi = [&](const Vec& v) -> Int { return a * v.first + b * v.second; };
  auto holds = [&](const Int& val) {
    return mod2 ? mod_floor(val - c, Int(2)) == 0 : val == c;
  };
  const Int rhs = c - phi(L.origin);
  if (L.kind == K::Point) {
    if (!holds(phi(L.origin))) L.kind = K::Empty;
    return;
  }
  if (L.kind == K::Line) {
    const Vec& v = L.generators[0];
    Int u = phi(v);
    if (mod2) u = mod_floor(u, Int(2));
    if (u == 0) {
      if (!holds(phi(L.origin))) L.kind = K::Empty;
      return;
    }
    if (mod2) {
      if (mod_floor(rhs, Int(2)) != 0) L.origin = vadd(L.origin, v);
      L.generators[0] = vmul(2, v);
      return;
    }
    if (!mpz_divisible_p(rhs.get_mpz_t(), u.get_mpz_t())) {
      L.kind = K::Empty;
      return;
    }
    L.origin = vadd(L.origin, vmul(rhs / u, v));
    L.generators.clear();
    L.kind = K::Point;
    return;
  }
  // plane
  const Vec g1 = L.generators[0], g2 = L.generators[1];
  Int u = phi(g1), w = phi(g2);
  if (mod2) {
    u = mod_floor(u, Int(2));
    w = mod_floor(w, Int(2));
    if (u == 0 && w == 0) {
      if (!holds(phi(L.origin))) L.kind = K::Empty;
      return;
    }
    const bool r = mod_floor(rhs, Int(2)) != 0;
    if (u != 0) {
      if (r) L.origin = vadd(L.origin, g1);
      L.generators = {vmul(2, g1), w != 0 ? vadd(g2, g1) : g2};
    } else {
      if (r) L.origin = vadd(L.origin, g2);
      L.generators = {g1, vmul(2, g2)};
    }
    return;
  }
  if (u == 0 && w == 0) {
    if (!holds(phi(L.origin))) L.kind = K::Empty;
    return;
  }
  Int h, x, y;
  mpz_gcdext(h.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), u.get_mpz_t(), w.get_mpz_t());
  if (!mpz_divisible_p(rhs.get_mpz_t(), h.get_mpz_t())) {
    L.kind = K::Empty;
    return;
  }
  const Int k = rhs / h;
  L.origin = vadd(L.origin, vadd(vmul(k * x, g1), vmul(k * y, g2)));
  L.generators = {vadd(vmul(w / h, g1), vmul(-u / h, g2))};
  L.kind = K::Line;
}

}  // namespace

bool RelationLattice::contains(const Int& m, const Int& n) const {
  const Int dm = m - origin.first, dn = n - origin.second;
  switch (kind) {
    case Kind::Empty: return false;
    case Kind::Point: return dm == 0 && dn == 0;
    case Kind::Line: {
      const Vec& v = generators[0];
      if (dm * v.second - dn * v.first != 0) return false;
      const Int& comp = v.first != 0 ? v.first : v.second;
      const Int& val = v.first != 0 ? dm : dn;
      return mpz_divisible_p(val.get_mpz_t(), comp.get_mpz_t()) != 0;
    }
    case Kind::Plane: {
      const Vec &g1 = generators[0], &g2 = generators[1];
      const Int det = g1.first * g2.second - g1.second * g2.first;
      const Int t1 = dm * g2.second - dn * g2.first, t2 = g1.first * dn - g1.second * dm;
      return mpz_divisible_p(t1.get_mpz_t(), det.get_mpz_t()) &&
             mpz_divisible_p(t2.get_mpz_t(), det.get_mpz_t());
    }
  }
  return false;
}

std::string RelationLattice::to_string() const {
  std::string s = lattice_kind_name(kind);
  if (kind == Kind::Empty) return s;
  s += " (" + origin.first.get_str() + ", " + origin.second.get_str() + ")";
  for (const auto& g : generators) s += " + Z(" + g.first.get_str() + ", " + g.second.get_str() + ")";
  return s;
}

RelationPairs mu_relation_pairs(const Rat& alpha, const Rat& delta, const Rat& mu, long p, long q,
                                u64 box) {
  if (sgn(alpha) == 0 || sgn(delta) == 0 || sgn(mu) == 0)
    fail(ErrorCode::InvalidArgument, "alpha, delta and mu must be nonzero");
  if (p == 0 || q == 0) fail(ErrorCode::InvalidArgument, "p and q must be nonzero");
  RelationPairs out;
  RelationLattice& L = out.lattice;
  L.base = coprime_base({abs(Int(alpha.get_num())), Int(alpha.get_den()), abs(Int(delta.get_num())),
                         Int(delta.get_den()), abs(Int(mu.get_num())), Int(mu.get_den())});
  L.exp_alpha = exponents_over(L.base, alpha);
  L.exp_delta = exponents_over(L.base, delta);
  L.exp_mu = exponents_over(L.base, mu);
  L.neg_alpha = sgn(alpha) < 0;
  L.neg_delta = sgn(delta) < 0;
  L.neg_mu = sgn(mu) < 0;
  L.kind = RelationLattice::Kind::Plane;
  L.origin = {0, 0};
  L.generators = {{1, 0}, {0, 1}};
  const Int P = p, Q = q;
  // per base element: q e_alpha m - p e_delta n = q e_mu
  for (size_t i = 0; i < L.base.size(); ++i)
    intersect(L, Q * L.exp_alpha[i], -P * L.exp_delta[i], Q * L.exp_mu[i], false);
  // signs: q [alpha < 0] m + p [delta < 0] n = q [mu < 0] mod 2
  intersect(L, L.neg_alpha ? Q : Int(0), L.neg_delta ? P : Int(0), L.neg_mu ? Q : Int(0), true);

  for (u64 m = 1; m <= box; ++m)
    for (u64 n = 1; n <= box; ++n) {
      if (!L.contains(from_u64(m), from_u64(n))) continue;
      const long mm = static_cast<long>(m), nn = static_cast<long>(n);
      if (rat_pow(mu, q) * rat_pow(delta, nn * p) != rat_pow(alpha, mm * q))
        fail(ErrorCode::ValidationMismatch, "lattice point (" + std::to_string(m) + ", " +
                                                std::to_string(n) + ") fails the relation");
      out.points.emplace_back(m, n);
    }
  return out;
}

InfinitudeReport infinitude_check(const ClassificationData& data, u64 box,
                                  const GridScanOptions& opt) {
  auto [c1, c2] = build_c_pair(data);
  InfinitudeReport rep;
  std::set<std::pair<u64, u64>> allowed;
  if (multiplicative(data.tag)) {
    RelationPairs rp = mu_relation_pairs(data.alpha, data.delta, data.mu, data.p, data.q, box);
    rep.pairs = rp.points;
  } else {
    for (u64 m = 1; m <= box; ++m)
      for (u64 n = 1; n <= box; ++n) rep.pairs.emplace_back(m, n);
  }
  allowed.insert(rep.pairs.begin(), rep.pairs.end());

  GridScanOptions o = opt;
  o.diagonal_only = false;
  GridScanReport gr =
      grid_scan(MapSpec::mobius(map_f(data)), MapSpec::mobius(map_g(data)), c1, c2, box, box, o);
  rep.degenerate_m = gr.degenerate_m;
  rep.degenerate_n = gr.degenerate_n;
  rep.stationary_factor = gr.stationary_factor;

  struct RatLess {
    bool operator()(const Rat& a, const Rat& b) const { return cmp(a, b) < 0; }
  };
  std::set<Rat, RatLess> sols(gr.stationary_roots.begin(), gr.stationary_roots.end());
  std::vector<const GridHit*> hits;
  for (const GridHit& h : gr.hits)
    if (allowed.count({h.m, h.n})) hits.push_back(&h);
  std::stable_sort(hits.begin(), hits.end(), [](const GridHit* a, const GridHit* b) {
    return std::max(a->m, a->n) < std::max(b->m, b->n);
  });
  // nested boxes [1, b]^2
  rep.nested_counts.assign(box, 0);
  Poly L = gr.stationary_factor;
  auto degree_of = [](const Poly& p) { return p.degree() < 1 ? 0L : squarefree_part(p).degree(); };
  size_t k = 0;
  const bool stationary_live = rep.pairs.size() > 0;
  for (u64 b = 1; b <= box; ++b) {
    for (; k < hits.size() && std::max(hits[k]->m, hits[k]->n) <= b; ++k) {
      Poly shared = common_factor(L, hits[k]->factor);
      L = L * divmod(hits[k]->factor, shared).first;
      sols.insert(hits[k]->roots.begin(), hits[k]->roots.end());
    }
    bool any_pair = false;
    for (const auto& pr : rep.pairs) any_pair = any_pair || std::max(pr.first, pr.second) <= b;
    rep.nested_counts[b - 1] = (stationary_live && any_pair) || k > 0 ? degree_of(L) : 0;
  }
  if (rep.pairs.empty()) sols.clear();
  rep.solutions.assign(sols.begin(), sols.end());
  rep.distinct_lower_bound = box == 0 ? 0 : rep.nested_counts.back();
  rep.grows = box >= 2 && rep.nested_counts[box - 1] > rep.nested_counts[(box + 1) / 2 - 1];
  return rep;
}

}  // namespace itergcd
