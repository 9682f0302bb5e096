#include "itergcd/positive_char.hpp"

#include <algorithm>
#include <limits>

#include "itergcd/errors.hpp"

namespace itergcd {

namespace {

// F_p[z] helpers on coordinate vectors, used only to build the tables
std::vector<u64> zmulmod(const std::vector<u64>& a, const std::vector<u64>& b,
                         const std::vector<u64>& m, u64 p) {
  const size_t e = m.size() - 1;
  std::vector<u64> r(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  for (size_t k = r.size(); k-- > e;) {
    u64 c = r[k];
    if (c == 0) continue;
    for (size_t j = 0; j <= e; ++j) r[k - e + j] = (r[k - e + j] + p * p - c * m[j]) % p;
  }
  r.resize(e);
  return r;
}

bool is_irreducible_mod_p(const std::vector<u64>& m, u64 p) {
  // irreducible iff no monic factor of degree 1..deg/2; brute force over candidates
  const size_t e = m.size() - 1;
  for (size_t d = 1; d <= e / 2; ++d) {
    u64 count = 1;
    for (size_t i = 0; i < d; ++i) count *= p;
    for (u64 code = 0; code < count; ++code) {
      std::vector<u64> g(d + 1);
      u64 c = code;
      for (size_t i = 0; i < d; ++i) {
        g[i] = c % p;
        c /= p;
      }
      g[d] = 1;
      // remainder of m by g
      std::vector<u64> r = m;
      for (size_t k = r.size(); k-- > d;) {
        u64 lead = r[k];
        if (lead == 0) continue;
        for (size_t j = 0; j <= d; ++j) r[k - d + j] = (r[k - d + j] + p * p - lead * g[j]) % p;
      }
      bool zero = true;
      for (size_t j = 0; j < d; ++j) zero = zero && r[j] == 0;
      if (zero) return false;
    }
  }
  return true;
}

}  // namespace

Fq::Fq(u64 p, unsigned e) : p_(p), e_(e) {
  if (!is_prime_u64(p) || e == 0) fail(ErrorCode::InvalidArgument, "F_q needs a prime p and e >= 1");
  q_ = 1;
  for (unsigned i = 0; i < e; ++i) {
    q_ *= p;
    if (q_ > (1u << 16)) fail(ErrorCode::InvalidArgument, "field order exceeds 2^16");
  }
  // least monic irreducible
  modulus_.assign(e + 1, 0);
  modulus_[e] = 1;
  if (e == 1) {
    modulus_[0] = 0;  // z, so F_p elements are their own coordinate
  } else {
    for (u64 code = 0; code < q_; ++code) {
      // code order is lexicographic with the top coefficient most significant
      std::vector<u64> m(e + 1);
      u64 cc = code;
      for (unsigned i = 0; i < e; ++i) {
        m[i] = cc % p;
        cc /= p;
      }
      m[e] = 1;
      if (m[0] != 0 && is_irreducible_mod_p(m, p)) {
        modulus_ = m;
        break;
      }
    }
  }
  auto coords_of = [&](u64 a) {
    std::vector<u64> c(e);
    for (unsigned i = 0; i < e; ++i) {
      c[i] = a % p;
      a /= p;
    }
    return c;
  };
  auto code_of = [&](const std::vector<u64>& c) {
    u64 a = 0;
    for (size_t i = c.size(); i-- > 0;) a = a * p + c[i];
    return static_cast<Elem>(a);
  };
  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  for (u64 a = 0; a < q_; ++a) {
    auto ca = coords_of(a);
    std::vector<u64> n(e);
    for (unsigned i = 0; i < e; ++i) n[i] = (p - ca[i]) % p;
    neg_[a] = code_of(n);
    for (u64 b = 0; b < q_; ++b) {
      auto cb = coords_of(b);
      std::vector<u64> s(e);
      for (unsigned i = 0; i < e; ++i) s[i] = (ca[i] + cb[i]) % p;
      add_[a * q_ + b] = code_of(s);
      mul_[a * q_ + b] = e == 1 ? static_cast<Elem>(a * b % p) : code_of(zmulmod(ca, cb, modulus_, p));
    }
  }
  for (u64 a = 1; a < q_; ++a)
    for (u64 b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<Elem>(b);
}

Fq Fq::of_order(u64 q) {
  for (u64 p = 2; p <= q; ++p) {
    if (!is_prime_u64(p) || q % p != 0) continue;
    unsigned e = 0;
    u64 r = q;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    if (r != 1) break;
    return Fq(p, e);
  }
  fail(ErrorCode::InvalidArgument, "field order " + std::to_string(q) + " is not a prime power");
}

Fq::Elem Fq::inv(Elem a) const {
  if (a == 0) fail(ErrorCode::InvalidArgument, "inverse of zero in F_q");
  return inv_[a];
}

Fq::Elem Fq::pow(Elem a, u64 n) const {
  Elem r = 1;
  while (n) {
    if (n & 1) r = mul(r, a);
    n >>= 1;
    if (n) a = mul(a, a);
  }
  return r;
}

Fq::Elem Fq::from_int(long v) const {
  long m = v % static_cast<long>(p_);
  if (m < 0) m += static_cast<long>(p_);
  return static_cast<Elem>(m);
}

std::vector<u64> Fq::coords(Elem a) const {
  std::vector<u64> c(e_);
  for (unsigned i = 0; i < e_; ++i) {
    c[i] = a % p_;
    a = static_cast<Elem>(a / p_);
  }
  return c;
}

Fq::Elem Fq::from_coords(const std::vector<u64>& c) const {
  if (c.size() > e_) fail(ErrorCode::InvalidArgument, "too many coordinates for F_q");
  u64 a = 0;
  for (size_t i = c.size(); i-- > 0;) {
    if (c[i] >= p_) fail(ErrorCode::InvalidArgument, "coordinate out of range");
    a = a * p_ + c[i];
  }
  return static_cast<Elem>(a);
}

std::string Fq::to_string(Elem a) const {
  if (e_ == 1 || a < p_) return std::to_string(a);
  // polynomial in the generator z, highest power first
  const auto c = coords(a);
  std::string s;
  for (size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (i == 0 || c[i] != 1) s += std::to_string(c[i]);
    if (i > 0) s += (c[i] != 1 ? "*z" : "z") + (i > 1 ? "^" + std::to_string(i) : std::string());
  }
  return "(" + s + ")";
}

namespace fq {

void trim(FqPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FqPoly add(const Fq& F, const FqPoly& a, const FqPoly& b) {
  FqPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

FqPoly sub(const Fq& F, const FqPoly& a, const FqPoly& b) {
  FqPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

FqPoly mul(const Fq& F, const FqPoly& a, const FqPoly& b) {
  if (a.empty() || b.empty()) return {};
  FqPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

FqPoly scale(const Fq& F, const FqPoly& a, Fq::Elem s) {
  FqPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], s);
  trim(r);
  return r;
}

std::pair<FqPoly, FqPoly> divmod(const Fq& F, const FqPoly& a, const FqPoly& b) {
  if (b.empty()) fail(ErrorCode::InvalidArgument, "division by zero polynomial over F_q");
  FqPoly r = a, q;
  if (r.size() >= b.size()) q.assign(r.size() - b.size() + 1, 0);
  const Fq::Elem il = F.inv(b.back());
  while (r.size() >= b.size()) {
    const size_t off = r.size() - b.size();
    const Fq::Elem c = F.mul(r.back(), il);
    q[off] = c;
    for (size_t j = 0; j < b.size(); ++j) r[off + j] = F.sub(r[off + j], F.mul(c, b[j]));
    trim(r);
  }
  trim(q);
  return {q, r};
}

FqPoly gcd(const Fq& F, FqPoly a, FqPoly b) {
  while (!b.empty()) {
    FqPoly r = divmod(F, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) a = scale(F, a, F.inv(a.back()));
  return a;
}

FqPoly pow(const Fq& F, const FqPoly& a, u64 n) {
  FqPoly r{1}, b = a;
  while (n) {
    if (n & 1) r = mul(F, r, b);
    n >>= 1;
    if (n) b = mul(F, b, b);
  }
  return r;
}

Fq::Elem eval(const Fq& F, const FqPoly& a, Fq::Elem v) {
  Fq::Elem r = 0;
  for (size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, v), a[i]);
  return r;
}

std::string to_string(const Fq& F, const FqPoly& a, char var) {
  if (a.empty()) return "0";
  std::string s;
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] == 0) continue;
    if (!s.empty()) s += " + ";
    const bool one = a[i] == 1;
    if (!one || i == 0) s += F.to_string(a[i]);
    if (i > 0) {
      if (!one) s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

FqRat rat(const Fq& F, FqPoly num, FqPoly den) {
  trim(num);
  trim(den);
  if (den.empty()) fail(ErrorCode::PoleError, "zero denominator in F_q(t)");
  if (num.empty()) return FqRat{{}, {1}};
  FqPoly g = gcd(F, num, den);
  num = divmod(F, num, g).first;
  den = divmod(F, den, g).first;
  const Fq::Elem il = F.inv(den.back());
  return FqRat{scale(F, num, il), scale(F, den, il)};
}

FqRat radd(const Fq& F, const FqRat& a, const FqRat& b) {
  return rat(F, add(F, mul(F, a.num, b.den), mul(F, b.num, a.den)), mul(F, a.den, b.den));
}

FqRat rsub(const Fq& F, const FqRat& a, const FqRat& b) {
  return rat(F, sub(F, mul(F, a.num, b.den), mul(F, b.num, a.den)), mul(F, a.den, b.den));
}

FqRat rmul(const Fq& F, const FqRat& a, const FqRat& b) {
  return rat(F, mul(F, a.num, b.num), mul(F, a.den, b.den));
}

FqRat rdiv(const Fq& F, const FqRat& a, const FqRat& b) {
  if (b.num.empty()) fail(ErrorCode::PoleError, "division by zero in F_q(t)");
  return rat(F, mul(F, a.num, b.den), mul(F, a.den, b.num));
}

FqRat rpow(const Fq& F, const FqRat& a, long n) {
  // num/den stay coprime under powers, so no renormalization beyond the sign of n
  if (n >= 0) return FqRat{pow(F, a.num, static_cast<u64>(n)), pow(F, a.den, static_cast<u64>(n))};
  return rat(F, pow(F, a.den, static_cast<u64>(-n)), pow(F, a.num, static_cast<u64>(-n)));
}

bool is_zero(const FqRat& a) { return a.num.empty(); }

std::string to_string(const Fq& F, const FqRat& a) {
  if (a.den.size() == 1) return to_string(F, a.num, 't');
  return "(" + to_string(F, a.num, 't') + ")/(" + to_string(F, a.den, 't') + ")";
}

void ktrim(KPoly& a) {
  while (!a.empty() && is_zero(a.back())) a.pop_back();
}

KPoly kadd(const Fq& F, const KPoly& a, const KPoly& b) {
  KPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = radd(F, i < a.size() ? a[i] : FqRat{}, i < b.size() ? b[i] : FqRat{});
  ktrim(r);
  return r;
}

KPoly ksub(const Fq& F, const KPoly& a, const KPoly& b) {
  KPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = rsub(F, i < a.size() ? a[i] : FqRat{}, i < b.size() ? b[i] : FqRat{});
  ktrim(r);
  return r;
}

KPoly kmul(const Fq& F, const KPoly& a, const KPoly& b) {
  if (a.empty() || b.empty()) return {};
  KPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = radd(F, r[i + j], rmul(F, a[i], b[j]));
  }
  ktrim(r);
  return r;
}

KPoly kscale(const Fq& F, const KPoly& a, const FqRat& s) {
  KPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = rmul(F, a[i], s);
  ktrim(r);
  return r;
}

KPoly kpow(const Fq& F, const KPoly& a, u64 n) {
  KPoly r{FqRat{{1}, {1}}}, b = a;
  while (n) {
    if (n & 1) r = kmul(F, r, b);
    n >>= 1;
    if (n) b = kmul(F, b, b);
  }
  return r;
}

KPoly kconst(const FqPoly& x_poly) {
  KPoly r;
  for (Fq::Elem c : x_poly) r.push_back(c == 0 ? FqRat{} : FqRat{{c}, {1}});
  ktrim(r);
  return r;
}

std::pair<KPoly, FqRat> synthetic_division(const Fq& F, const KPoly& a, const FqRat& lambda) {
  if (a.empty()) return {{}, FqRat{}};
  KPoly q(a.size() - 1);
  FqRat acc = a.back();
  for (size_t i = a.size() - 1; i-- > 0;) {
    q[i] = acc;
    acc = radd(F, rmul(F, acc, lambda), a[i]);
  }
  ktrim(q);
  return {q, acc};
}

}  // namespace fq

LinearMapOverK linear_iterate(const Fq& F, const LinearMapOverK& f, u64 n) {
  if (fq::is_zero(f.A)) fail(ErrorCode::InvalidArgument, "linear map needs A != 0");
  const FqRat one{{1}, {1}};
  if (f.A == one) {
    // n B with n read in the prime field
    FqPoly nn{F.from_int(static_cast<long>(n % F.p()))};
    fq::trim(nn);
    return {one, fq::rmul(F, FqRat{nn, {1}}, f.B)};
  }
  if (n > static_cast<u64>(std::numeric_limits<long>::max()))
    fail(ErrorCode::InvalidArgument, "iterate count too large");
  FqRat An = fq::rpow(F, f.A, static_cast<long>(n));
  FqRat Bn = fq::rmul(F, f.B, fq::rdiv(F, fq::rsub(F, An, one), fq::rsub(F, f.A, one)));
  return {An, Bn};
}

LinearMapOverK linear_compose(const Fq& F, const LinearMapOverK& f, const LinearMapOverK& g) {
  // f(g(x)) = A_f (A_g x + B_g) + B_f
  return {fq::rmul(F, f.A, g.A), fq::radd(F, fq::rmul(F, f.A, g.B), f.B)};
}

namespace {

KRational kr_scale(const Fq& F, const KRational& r, const FqRat& s) {
  return {fq::kscale(F, r.num, s), r.den};
}

// F(X, Y) with X = N1/D1, Y = N2/D2, cleared by D1^dx D2^dy
KPoly eval_bivariate_cleared(const Fq& F, const Bivariate& B, const KRational& X,
                             const KRational& Y) {
  unsigned dx = 0, dy = 0;
  for (const auto& t : B) {
    dx = std::max(dx, t.i);
    dy = std::max(dy, t.j);
  }
  KPoly sum;
  for (const auto& t : B) {
    if (t.c == 0) continue;
    KPoly term = fq::kmul(F, fq::kpow(F, X.num, t.i), fq::kpow(F, X.den, dx - t.i));
    term = fq::kmul(F, term, fq::kmul(F, fq::kpow(F, Y.num, t.j), fq::kpow(F, Y.den, dy - t.j)));
    sum = fq::kadd(F, sum, fq::kscale(F, term, FqRat{{t.c}, {1}}));
  }
  return sum;
}

FqRat eval_bivariate(const Fq& F, const Bivariate& B, const FqRat& X, const FqRat& Y) {
  FqRat sum;
  for (const auto& t : B) {
    if (t.c == 0) continue;
    FqRat term = fq::rmul(F, fq::rpow(F, X, t.i), fq::rpow(F, Y, t.j));
    sum = fq::radd(F, sum, fq::rmul(F, term, FqRat{{t.c}, {1}}));
  }
  return sum;
}

}  // namespace

bool check_theorem_conditions(const Fq& F, const TheoremConditionInput& in) {
  const long qm1 = static_cast<long>(F.q()) - 1;
  if (!(fq::rpow(F, in.alpha_root, qm1) == in.alpha))
    fail(ErrorCode::RootWitnessInvalid, "alpha'^(q-1) != alpha");
  if (!(fq::rpow(F, in.delta_root, qm1) == in.delta))
    fail(ErrorCode::RootWitnessInvalid, "delta'^(q-1) != delta");
  const FqRat ar = fq::rpow(F, in.alpha_root, in.e2), dr = fq::rpow(F, in.delta_root, in.e2);
  if (!fq::is_zero(eval_bivariate(F, in.F, ar, dr))) return false;
  const FqRat u = fq::rdiv(F, ar, fq::rpow(F, in.alpha, in.e1));
  const FqRat v = fq::rdiv(F, dr, fq::rpow(F, in.delta, in.e1));
  return eval_bivariate_cleared(F, in.F, kr_scale(F, in.C1, u), kr_scale(F, in.C2, v)).empty();
}

KRational reduced_target(const Fq& F, const KRational& c, const FqRat& s) {
  // (c - s)/(x - s) = (N - s D) / ((x - s) D)
  KPoly num = fq::ksub(F, c.num, fq::kscale(F, c.den, s));
  KPoly lin{fq::rsub(F, FqRat{}, s), FqRat{{1}, {1}}};
  auto [q, r] = fq::synthetic_division(F, num, s);
  if (fq::is_zero(r)) return {q, c.den};
  return {num, fq::kmul(F, lin, c.den)};
}

KRational reduced_target_inverted(const Fq& F, const KRational& c, const FqRat& s2) {
  // x (1/c - s2)/(1 - s2 x) = x (D - s2 N) / (N (1 - s2 x))
  KPoly num = fq::kmul(F, KPoly{FqRat{}, FqRat{{1}, {1}}},
                       fq::ksub(F, c.den, fq::kscale(F, c.num, s2)));
  KPoly lin{FqRat{{1}, {1}}, fq::rsub(F, FqRat{}, s2)};
  fq::ktrim(lin);
  return {num, fq::kmul(F, c.num, lin)};
}

CounterexampleReport reproduce_counterexample(const Fq& F, Fq::Elem a, const FqPoly& h0, u64 M) {
  FqPoly h = h0;
  fq::trim(h);
  if (a == 0) fail(ErrorCode::InvalidArgument, "a must be a nonzero element of F_q");
  if (h.size() < 2) fail(ErrorCode::InvalidArgument, "h must be nonconstant");
  const u64 q = F.q();
  {
    Int budget = from_u64(q) * from_u64(h.size() - 1) * ipow(Int(from_u64(q)), M);
    if (budget > from_u64(kCounterexampleBudget))
      fail(ErrorCode::BudgetExceeded, "q deg(h) q^M = " + budget.get_str() + " exceeds budget");
  }
  CounterexampleReport rep;
  rep.q = q;
  rep.a = a;
  rep.h = h;
  const FqPoly t{0, 1};
  const FqPoly th = fq::mul(F, t, h);
  const FqPoly tpa = fq::add(F, t, FqPoly{a});
  rep.f = {fq::rat(F, fq::add(F, th, FqPoly{1})), fq::rat(F, fq::scale(F, th, a))};
  rep.g = {fq::rat(F, fq::add(F, fq::mul(F, tpa, h), FqPoly{1})), FqRat{}};
  // c(x) = x((x + a) h(x) + 1), constant in t
  FqPoly cx = fq::mul(F, FqPoly{0, 1}, fq::add(F, fq::mul(F, FqPoly{a, 1}, h), FqPoly{1}));
  rep.c = fq::kconst(cx);

  u64 N = 1;
  for (u64 m = 0; m <= M; ++m, N *= q) {
    CounterexampleStep st;
    st.m = m;
    st.N = std::to_string(N);
    FqPoly tn(N + 1, 0);
    tn[N] = 1;
    st.lambda = FqRat{tn, {1}};
    for (int side = 0; side < 2; ++side) {
      LinearMapOverK it = linear_iterate(F, side == 0 ? rep.f : rep.g, N);
      KPoly lin{it.B, it.A};
      fq::ktrim(lin);
      KPoly diff = fq::ksub(F, lin, rep.c);
      bool ok = fq::is_zero(fq::synthetic_division(F, diff, st.lambda).second);
      (side == 0 ? st.f_divisible : st.g_divisible) = ok;
    }
    rep.all_divisible = rep.all_divisible && st.f_divisible && st.g_divisible;
    rep.steps.push_back(std::move(st));
  }
  return rep;
}

}  // namespace itergcd
