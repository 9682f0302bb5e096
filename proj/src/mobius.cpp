#include "itergcd/mobius.hpp"

#include <map>

#include "itergcd/errors.hpp"

namespace itergcd {

MobiusMap::MobiusMap(Rat a, Rat b, Rat c, Rat d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (a_ * d_ - b_ * c_ == 0) fail(ErrorCode::NotInvertible, "determinant is zero");
  Rat lead = sgn(a_) != 0 ? a_ : (sgn(b_) != 0 ? b_ : c_);
  if (lead != 1) {
    Rat inv = 1 / lead;
    a_ *= inv;
    b_ *= inv;
    c_ *= inv;
    d_ *= inv;
  }
}

MobiusMap MobiusMap::compose(const MobiusMap& o) const {
  return MobiusMap(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
                   c_ * o.b_ + d_ * o.d_);
}

MobiusMap MobiusMap::inverse() const { return MobiusMap(d_, -b_, -c_, a_); }

Rat MobiusMap::eval(const Rat& v) const {
  Rat den = c_ * v + d_;
  if (sgn(den) == 0) fail(ErrorCode::PoleError, "Mobius map pole at " + v.get_str());
  return (a_ * v + b_) / den;
}

RationalFunction MobiusMap::to_ratfunc() const {
  return RationalFunction(Poly(std::vector<Rat>{b_, a_}), Poly(std::vector<Rat>{d_, c_}));
}

std::string MobiusMap::to_string() const { return to_ratfunc().to_string(); }

std::optional<MobiusMap> mobius_from_ratfunc(const RationalFunction& r) {
  if (r.num().degree() > 1 || r.den().degree() > 1) return std::nullopt;
  Rat a = r.num().coeff(1), b = r.num().coeff(0), c = r.den().coeff(1), d = r.den().coeff(0);
  if (a * d - b * c == 0) return std::nullopt;
  return MobiusMap(a, b, c, d);
}

MobiusMap mobius_iterate(const MobiusMap& f, u64 n) {
  MobiusMap r, b = f;
  while (n) {
    if (n & 1) r = r.compose(b);
    n >>= 1;
    if (n) b = b.compose(b);
  }
  return r;
}

std::optional<std::pair<std::string, std::string>> find_word_relation(const MobiusMap& f,
                                                                       const MobiusMap& g,
                                                                       int max_len) {
  // canonical forms make map equality a field comparison; key by their decimal strings
  auto key = [](const MobiusMap& m) {
    return m.a().get_str() + "|" + m.b().get_str() + "|" + m.c().get_str() + "|" + m.d().get_str();
  };
  std::map<std::string, std::string> seen;
  std::vector<std::pair<std::string, MobiusMap>> layer{{"", MobiusMap::identity()}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::pair<std::string, MobiusMap>> next;
    next.reserve(layer.size() * 2);
    for (const auto& [w, m] : layer) {
      for (char s : {'f', 'g'}) {
        std::string w2 = w + s;
        MobiusMap m2 = m.compose(s == 'f' ? f : g);
        auto [it, inserted] = seen.emplace(key(m2), w2);
        if (!inserted) return std::make_pair(it->second, w2);
        next.emplace_back(std::move(w2), std::move(m2));
      }
    }
    layer = std::move(next);
  }
  return std::nullopt;
}

}  // namespace itergcd
