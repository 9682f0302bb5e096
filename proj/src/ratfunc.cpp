#include "itergcd/ratfunc.hpp"

#include <cctype>

#include "itergcd/errors.hpp"
#include "itergcd/polygcd.hpp"

namespace itergcd {

RationalFunction ratfunc_normalize(const Poly& num, const Poly& den) {
  return RationalFunction(num, den);
}

RationalFunction::RationalFunction(Poly num) : num_(std::move(num)), den_(Poly::constant(1)) {}

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(ErrorCode::PoleError, "zero denominator");
  if (num_.is_zero()) {
    den_ = Poly::constant(1);
    return;
  }
  if (num_.degree() > 0 && den_.degree() > 0) {
    Poly g = common_factor(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
  }
  if (den_.lc() != 1) {
    Rat inv = 1 / den_.lc();
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-() const { return RationalFunction(-num_, den_); }

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) fail(ErrorCode::PoleError, "division by the zero function");
  return RationalFunction(num_ * o.den_, den_ * o.num_);
}

std::string RationalFunction::to_string() const {
  if (den_.degree() == 0) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

Rat ratfunc_eval(const RationalFunction& r, const Rat& v) {
  Rat d = r.den().eval(v);
  if (sgn(d) == 0) fail(ErrorCode::PoleError, "denominator vanishes at " + v.get_str());
  return r.num().eval(v) / d;
}

RationalFunction ratfunc_compose(const RationalFunction& r, const RationalFunction& s) {
  const long m = std::max(r.num().degree(), r.den().degree());
  const Poly& n2 = s.num();
  const Poly& d2 = s.den();
  // homogenize: r(n2/d2) = sum a_i n2^i d2^(m-i) / sum b_i n2^i d2^(m-i)
  std::vector<Poly> npow{Poly::constant(1)}, dpow{Poly::constant(1)};
  for (long i = 1; i <= m; ++i) {
    npow.push_back(npow.back() * n2);
    dpow.push_back(dpow.back() * d2);
  }
  auto homog = [&](const Poly& p) {
    Poly acc;
    for (long i = 0; i <= p.degree(); ++i)
      acc = acc + npow[i] * dpow[m - i] * p.coeff(static_cast<size_t>(i));
    return acc;
  };
  Poly num = homog(r.num()), den = homog(r.den());
  if (den.is_zero()) fail(ErrorCode::PoleError, "composition has identically zero denominator");
  return RationalFunction(num, den);
}

RationalFunction pow(const RationalFunction& r, long e) {
  if (e < 0) {
    if (r.is_zero()) fail(ErrorCode::PoleError, "zero function to a negative power");
    return RationalFunction(pow(r.den(), static_cast<u64>(-e)), pow(r.num(), static_cast<u64>(-e)));
  }
  return RationalFunction(pow(r.num(), static_cast<u64>(e)), pow(r.den(), static_cast<u64>(e)));
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  RationalFunction parse() {
    RationalFunction r = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  [[noreturn]] void error(const std::string& msg) {
    fail(ErrorCode::InvalidArgument,
         "cannot parse '" + s_ + "' at offset " + std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  RationalFunction expr() {
    RationalFunction r = term();
    while (true) {
      if (eat('+')) r = r + term();
      else if (eat('-')) r = r - term();
      else return r;
    }
  }
  RationalFunction term() {
    RationalFunction r = unary();
    while (true) {
      if (eat('*')) r = r * unary();
      else if (eat('/')) {
        RationalFunction d = unary();
        if (d.is_zero()) error("division by zero");
        r = r / d;
      } else return r;
    }
  }
  RationalFunction unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  RationalFunction power() {
    RationalFunction b = primary();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) error("expected an integer exponent");
      long e = std::stol(s_.substr(start, pos_ - start));
      if (e > 1'000'000) error("exponent too large");
      return pow(b, neg ? -e : e);
    }
    return b;
  }
  RationalFunction primary() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RationalFunction r = expr();
      if (!eat(')')) error("expected ')'");
      return r;
    }
    if (c == 'x') {
      ++pos_;
      return RationalFunction::x();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RationalFunction::constant(Rat(Int(s_.substr(start, pos_ - start))));
    }
    error("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace

RationalFunction parse_ratfunc(const std::string& text) { return Parser(text).parse(); }

Poly parse_poly(const std::string& text) {
  RationalFunction r = parse_ratfunc(text);
  if (!r.is_polynomial()) fail(ErrorCode::InvalidArgument, "'" + text + "' is not a polynomial");
  return r.num();
}

}  // namespace itergcd
