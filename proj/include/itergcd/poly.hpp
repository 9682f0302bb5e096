#pragma once

#include <string>
#include <utility>
#include <vector>

#include "itergcd/integer.hpp"

namespace itergcd {

// Dense univariate polynomial over Q, lowest degree first, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs);
  static Poly constant(const Rat& c);
  static Poly x();
  static Poly monomial(const Rat& c, size_t deg);

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  // degree of the zero polynomial is -1
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const Rat& lc() const { return c_.back(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }

  Rat eval(const Rat& v) const;
  Poly derivative() const;
  Poly monic() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rat& s) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  // Human-readable form accepted by parse_ratfunc, e.g. "3/2*x^2 - x + 1".
  std::string to_string() const;

 private:
  std::vector<Rat> c_;
  void trim();
};

// q, r with a = q*b + r, deg r < deg b; b nonzero
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
// exact quotient; false if b does not divide a
bool divides_exactly(const Poly& b, const Poly& a, Poly* quotient = nullptr);
Poly pow(const Poly& p, u64 e);
Poly poly_compose(const Poly& p, const Poly& q);  // p(q(x))

inline constexpr u64 kDefaultDegreeCap = 4096;
// f^n with f^0 = x; throws DegreeCapExceeded when deg(f)^n > cap
Poly poly_iterate(const Poly& f, u64 n, u64 degree_cap = kDefaultDegreeCap);

// Chebyshev polynomial with T_d((x + 1/x)/2) = (x^d + x^-d)/2 for d >= 1.
// d = 0 returns x, the convention under which c = T_0 acts as the identity exponent.
Poly chebyshev(u64 d);

// Integer-coefficient primitive associate (positive leading coefficient); zero stays zero.
std::vector<Int> primitive_integer(const Poly& p);
Poly from_integer(const std::vector<Int>& c);

// monic gcd by plain Euclid over Q; for small inputs and as a test oracle
Poly poly_gcd_euclid(const Poly& a, const Poly& b);

Poly squarefree_part(const Poly& p);

}  // namespace itergcd
