#pragma once

#include <string>

#include "itergcd/integer.hpp"

namespace itergcd {

// exp(2*pi*i*exponent/order), stored reduced: gcd(exponent, order) = 1 unless exponent = 0,
// in which case order = 1.
class RootOfUnity {
 public:
  RootOfUnity() = default;
  RootOfUnity(u64 order, i64 exponent);

  u64 order() const { return order_; }
  u64 exponent() const { return exponent_; }
  bool is_one() const { return order_ == 1; }

  RootOfUnity operator*(const RootOfUnity& o) const;
  RootOfUnity inverse() const;
  RootOfUnity pow(i64 e) const;
  bool operator==(const RootOfUnity& o) const = default;

  // over Q the only roots of unity are +1 and -1
  static RootOfUnity sign(int s) { return RootOfUnity(s < 0 ? 2 : 1, s < 0 ? 1 : 0); }

  std::string to_string() const;

 private:
  u64 order_ = 1;
  u64 exponent_ = 0;
};

}  // namespace itergcd
