#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "itergcd/integer.hpp"
#include "itergcd/ratfunc.hpp"

namespace itergcd {

// x -> (a x + b)/(c x + d), ad - bc != 0, scaled so the first nonzero of (a, b, c, d) is 1.
class MobiusMap {
 public:
  MobiusMap() : a_(1), b_(0), c_(0), d_(1) {}
  MobiusMap(Rat a, Rat b, Rat c, Rat d);  // throws NotInvertible
  static MobiusMap identity() { return MobiusMap(); }
  static MobiusMap affine(const Rat& alpha, const Rat& beta) { return MobiusMap(alpha, beta, 0, 1); }

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  const Rat& c() const { return c_; }
  const Rat& d() const { return d_; }
  bool is_affine() const { return sgn(c_) == 0; }

  // this o other
  MobiusMap compose(const MobiusMap& other) const;
  MobiusMap inverse() const;
  Rat eval(const Rat& v) const;  // PoleError at the pole
  RationalFunction to_ratfunc() const;
  bool operator==(const MobiusMap& o) const = default;
  std::string to_string() const;

 private:
  Rat a_, b_, c_, d_;
};

// The Mobius map represented by r, if r has degree <= 1 and is invertible.
std::optional<MobiusMap> mobius_from_ratfunc(const RationalFunction& r);

// f^n by binary powering of the coefficient matrix.
MobiusMap mobius_iterate(const MobiusMap& f, u64 n);

// A pair of distinct words over {f, g} of length <= max_len with equal composites, if one
// exists. Words are strings over {'f','g'} read left to right as composition.
std::optional<std::pair<std::string, std::string>> find_word_relation(const MobiusMap& f,
                                                                       const MobiusMap& g,
                                                                       int max_len = 8);

}  // namespace itergcd
