#include "itergcd/root_of_unity.hpp"

#include "itergcd/errors.hpp"

namespace itergcd {

RootOfUnity::RootOfUnity(u64 order, i64 exponent) {
  if (order == 0) fail(ErrorCode::InvalidArgument, "root of unity of order 0");
  i64 m = static_cast<i64>(order);
  i64 e = exponent % m;
  if (e < 0) e += m;
  u64 g = gcd_u64(static_cast<u64>(e), order);
  if (e == 0) {
    order_ = 1;
    exponent_ = 0;
  } else {
    order_ = order / g;
    exponent_ = static_cast<u64>(e) / g;
  }
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
  u64 l = lcm_u64(order_, o.order_);
  unsigned __int128 e = static_cast<unsigned __int128>(exponent_) * (l / order_) +
                        static_cast<unsigned __int128>(o.exponent_) * (l / o.order_);
  return RootOfUnity(l, static_cast<i64>(e % l));
}

RootOfUnity RootOfUnity::inverse() const {
  return RootOfUnity(order_, static_cast<i64>((order_ - exponent_) % order_));
}

RootOfUnity RootOfUnity::pow(i64 e) const {
  i64 m = static_cast<i64>(order_);
  i64 r = e % m;
  if (r < 0) r += m;
  return RootOfUnity(order_, static_cast<i64>(mulmod(exponent_, static_cast<u64>(r), order_)));
}

std::string RootOfUnity::to_string() const {
  return "zeta(" + std::to_string(exponent_) + "/" + std::to_string(order_) + ")";
}

}  // namespace itergcd
