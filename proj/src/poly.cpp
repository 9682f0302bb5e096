#include "itergcd/poly.hpp"

#include <sstream>

#include "itergcd/errors.hpp"
#include "itergcd/polygcd.hpp"

namespace itergcd {

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Poly Poly::constant(const Rat& c) { return Poly(std::vector<Rat>{c}); }
Poly Poly::x() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }

Poly Poly::monomial(const Rat& c, size_t deg) {
  std::vector<Rat> v(deg + 1, Rat(0));
  v[deg] = c;
  return Poly(std::move(v));
}

Rat Poly::eval(const Rat& v) const {
  Rat r = 0;
  for (size_t i = c_.size(); i-- > 0;) r = r * v + c_[i];
  return r;
}

Poly Poly::derivative() const {
  std::vector<Rat> d;
  for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rat inv = 1 / lc();
  return (*this) * inv;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  std::vector<Rat> r(c_);
  for (auto& v : r) v = -v;
  return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return Poly(std::move(r));
}

Poly Poly::operator*(const Rat& s) const {
  if (sgn(s) == 0) return Poly();
  std::vector<Rat> r(c_);
  for (auto& v : r) v *= s;
  return Poly(std::move(r));
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t k = c_.size(); k-- > 0;) {
    const Rat& c = c_[k];
    if (sgn(c) == 0) continue;
    Rat a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << "x";
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrorCode::InvalidArgument, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Rat> r = a.coeffs();
  const auto& bc = b.coeffs();
  size_t db = bc.size() - 1;
  std::vector<Rat> q(r.size() - db, Rat(0));
  Rat inv = 1 / b.lc();
  for (size_t k = r.size(); k-- > db;) {
    if (sgn(r[k]) == 0) continue;
    Rat f = r[k] * inv;
    q[k - db] = f;
    for (size_t j = 0; j <= db; ++j) r[k - db + j] -= f * bc[j];
  }
  r.resize(db);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

bool divides_exactly(const Poly& b, const Poly& a, Poly* quotient) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) return false;
  if (quotient) *quotient = std::move(q);
  return true;
}

Poly pow(const Poly& p, u64 e) {
  Poly r = Poly::constant(1), b = p;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Poly poly_compose(const Poly& p, const Poly& q) {
  Poly r;
  const auto& c = p.coeffs();
  for (size_t i = c.size(); i-- > 0;) r = r * q + Poly::constant(c[i]);
  return r;
}

Poly poly_iterate(const Poly& f, u64 n, u64 degree_cap) {
  if (n == 0) return Poly::x();
  long d = f.degree();
  if (d >= 2) {
    Int deg = ipow(Int(d), n);
    if (deg > from_u64(degree_cap)) fail(ErrorCode::DegreeCapExceeded, "deg(f)^n exceeds cap");
  }
  Poly r = f;
  for (u64 i = 1; i < n; ++i) r = poly_compose(f, r);
  return r;
}

Poly chebyshev(u64 d) {
  if (d == 0) return Poly::x();
  Poly prev = Poly::constant(1), cur = Poly::x();  // classical T_0, T_1
  Poly two_x = Poly::monomial(2, 1);
  for (u64 i = 1; i < d; ++i) {
    Poly next = two_x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<Int> primitive_integer(const Poly& p) {
  std::vector<Int> out;
  if (p.is_zero()) return out;
  Int l = 1;
  for (const auto& c : p.coeffs()) l = lcm(l, Int(c.get_den()));
  Int g = 0;
  for (const auto& c : p.coeffs()) {
    Int v = Int(c.get_num()) * (l / Int(c.get_den()));
    out.push_back(v);
    g = gcd(g, v);
  }
  if (sgn(out.back()) < 0) g = -g;
  for (auto& v : out) v /= g;
  return out;
}

Poly from_integer(const std::vector<Int>& c) {
  std::vector<Rat> r;
  r.reserve(c.size());
  for (const auto& v : c) r.emplace_back(v);
  return Poly(std::move(r));
}

Poly poly_gcd_euclid(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divmod(x, y).second;
    x = std::move(y);
    y = r.is_zero() ? r : from_integer(primitive_integer(r));
  }
  return x.monic();
}

Poly squarefree_part(const Poly& p) {
  if (p.degree() < 1) return p.is_zero() ? p : Poly::constant(1);
  Poly g = common_factor(p, p.derivative());
  return divmod(p, g).first.monic();
}

}  // namespace itergcd
