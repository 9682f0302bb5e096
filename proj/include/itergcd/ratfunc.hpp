#pragma once

#include <string>

#include "itergcd/poly.hpp"

namespace itergcd {

// num/den in lowest terms over Q with den monic.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(Poly::constant(1)) {}
  RationalFunction(Poly num);  // NOLINT: polynomials embed implicitly
  RationalFunction(Poly num, Poly den);
  static RationalFunction constant(const Rat& c) { return RationalFunction(Poly::constant(c)); }
  static RationalFunction x() { return RationalFunction(Poly::x()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  long degree() const { return std::max(num_.degree(), den_.degree()); }

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator-() const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }

  std::string to_string() const;

 private:
  Poly num_, den_;
};

RationalFunction ratfunc_normalize(const Poly& num, const Poly& den);
// throws PoleError at zeros of the denominator
Rat ratfunc_eval(const RationalFunction& r, const Rat& v);
// r(s); throws PoleError when the composed denominator vanishes identically
RationalFunction ratfunc_compose(const RationalFunction& r, const RationalFunction& s);
// integer power, negative exponents invert (PoleError for the zero function)
RationalFunction pow(const RationalFunction& r, long e);

// Parser for expressions in x with integer literals, + - * / ^ and parentheses.
// parse_ratfunc(r.to_string()) == r for every normalized r.
RationalFunction parse_ratfunc(const std::string& text);
Poly parse_poly(const std::string& text);

}  // namespace itergcd
