#include "json_io.hpp"

#include <cctype>

#include "itergcd/errors.hpp"

namespace itergcd::app {

namespace {

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

bool parse_decimal(const std::string& s, Int& out) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  out.set_str(s[0] == '+' ? s.substr(1) : s, 10);
  return true;
}

json u64_list(const std::vector<u64>& v) {
  json a = json::array();
  for (u64 x : v) a.push_back(x);
  return a;
}

}  // namespace

bool Reader::has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

Reader Reader::at(const std::string& key) const {
  if (!j_->is_object()) error("expected an object");
  auto it = j_->find(key);
  if (it == j_->end()) throw SchemaError(ptr_ + "/" + escape_token(key), "required member missing");
  return Reader(*it, ptr_ + "/" + escape_token(key));
}

Reader Reader::at(size_t i) const {
  if (!j_->is_array()) error("expected an array");
  if (i >= j_->size()) error("index " + std::to_string(i) + " out of range");
  return Reader((*j_)[i], ptr_ + "/" + std::to_string(i));
}

size_t Reader::size() const {
  if (!j_->is_array()) error("expected an array");
  return j_->size();
}

Int Reader::as_int() const {
  if (j_->is_number_integer()) {
    if (j_->is_number_unsigned()) return from_u64(j_->get<u64>());
    return from_i64(j_->get<i64>());
  }
  Int v;
  if (j_->is_string() && parse_decimal(j_->get<std::string>(), v)) return v;
  error("expected an integer (JSON integer or decimal string)");
}

Rat Reader::as_rat() const {
  if (j_->is_number_integer()) return Rat(as_int());
  if (j_->is_string()) {
    const std::string s = j_->get<std::string>();
    const size_t slash = s.find('/');
    Int n, d(1);
    if (parse_decimal(s.substr(0, slash), n) &&
        (slash == std::string::npos || parse_decimal(s.substr(slash + 1), d))) {
      if (d == 0) error("zero denominator");
      Rat r(n, d);
      r.canonicalize();
      return r;
    }
  }
  error("expected a rational (JSON integer or \"p/q\" string)");
}

u64 Reader::as_u64() const {
  const Int v = as_int();
  if (v < 0 || !fits_u64(v)) error("expected a nonnegative 64-bit integer");
  return to_u64(v);
}

long Reader::as_long() const {
  const Int v = as_int();
  if (!fits_i64(v)) error("integer out of range");
  return static_cast<long>(to_i64(v));
}

bool Reader::as_bool() const {
  if (!j_->is_boolean()) error("expected a boolean");
  return j_->get<bool>();
}

std::string Reader::as_string() const {
  if (!j_->is_string()) error("expected a string");
  return j_->get<std::string>();
}

Poly Reader::as_poly() const {
  const RationalFunction r = as_ratfunc();
  if (!r.is_polynomial()) error("expected a polynomial in x");
  return r.num();
}

RationalFunction Reader::as_ratfunc() const {
  if (j_->is_number_integer()) return RationalFunction::constant(as_rat());
  const std::string s = as_string();
  try {
    return parse_ratfunc(s);
  } catch (const Error& e) {
    error(std::string("cannot parse rational function: ") + e.what());
  }
}

void merge(json& dst, const json& src) {
  for (auto it = src.begin(); it != src.end(); ++it) dst[it.key()] = it.value();
}

u64 u64_or(const Reader& r, const std::string& key, u64 fallback) {
  return r.has(key) ? r.at(key).as_u64() : fallback;
}

bool bool_or(const Reader& r, const std::string& key, bool fallback) {
  return r.has(key) ? r.at(key).as_bool() : fallback;
}

// ---------------------------------------------------------------------------------------
// encoders

json to_json(const Int& v) {
  if (fits_i64(v)) return to_i64(v);
  return v.get_str();
}

json to_json(const Rat& v) { return v.get_str(); }

json to_json(const std::vector<Rat>& v) {
  json a = json::array();
  for (const Rat& r : v) a.push_back(to_json(r));
  return a;
}

json to_json(const EPS& s) {
  return json{{"threshold", s.threshold},
              {"period", s.period},
              {"residues", u64_list(s.residues)},
              {"exceptional", u64_list(s.exceptional)},
              {"certified", s.certified}};
}

EPS eps_from_json(const Reader& r) {
  EPS s;
  s.threshold = r.at("threshold").as_u64();
  s.period = r.at("period").as_u64();
  if (s.period == 0) r.at("period").error("period must be positive");
  for (const char* key : {"residues", "exceptional"}) {
    Reader list = r.at(key);
    auto& out = std::string(key) == "residues" ? s.residues : s.exceptional;
    for (size_t i = 0; i < list.size(); ++i) out.push_back(list.at(i).as_u64());
  }
  s.certified = r.at("certified").as_bool();
  for (u64 x : s.residues)
    if (x >= s.period) r.at("residues").error("residue not below the period");
  for (u64 x : s.exceptional)
    if (x >= s.threshold) r.at("exceptional").error("exceptional element not below the threshold");
  return s;
}

json to_json(const GcdSetInstance& inst) {
  return json{{"d1", to_json(inst.d1)}, {"d2", to_json(inst.d2)}, {"d3", to_json(inst.d3)},
              {"d4", to_json(inst.d4)}, {"a", to_json(inst.a)},   {"b", to_json(inst.b)},
              {"k", inst.k}};
}

json to_json(const GcdSetResult& r) {
  json primes = json::array();
  for (const PrimeRecord& p : r.certificate.primes) {
    json mech = json::array();
    for (Mechanism m : p.mechanisms) mech.push_back(mechanism_name(m));
    primes.push_back(json{{"p", p.p},
                          {"v_p_k", p.e},
                          {"case", case_tag_name(p.tag)},
                          {"mechanisms", mech},
                          {"ell", p.ell ? json(*p.ell) : json(nullptr)},
                          {"growth_law", p.growth_law},
                          {"period", p.period},
                          {"threshold", p.threshold},
                          {"set", to_json(p.set)}});
  }
  const GcdSetCertificate& c = r.certificate;
  return json{{"set", to_json(r.set)},
              {"certificate",
               json{{"primes", primes},
                    {"dependence_witness",
                     c.dependence_witness ? json(*c.dependence_witness) : json(nullptr)},
                    {"period", c.period},
                    {"threshold", c.threshold},
                    {"validated_upto", c.validated_upto},
                    {"heuristic", c.heuristic}}}};
}

json to_json(const GeneralPowerSystem& s) {
  return json{{"k", s.k},
              {"a", to_json(s.a)},
              {"b", to_json(s.b)},
              {"c1", to_json(s.c1)},
              {"c2", to_json(s.c2)},
              {"d1", to_json(s.d1)},
              {"d2", to_json(s.d2)},
              {"d3", to_json(s.d3)},
              {"d4", to_json(s.d4)}};
}

json to_json(const PowerSystemResult& r) {
  json classes = json::array();
  for (const PowerSystemClass& c : r.classes)
    classes.push_back(json{{"residue", c.residue},
                           {"e1", c.e1},
                           {"e2", c.e2},
                           {"set", to_json(c.gcd.set)},
                           {"heuristic", c.gcd.certificate.heuristic}});
  return json{{"set", to_json(r.set)},
              {"n_min", r.n_min},
              {"tracker_preperiod", r.tracker_preperiod},
              {"tracker_period", r.tracker_period},
              {"first_structural", r.first_structural},
              {"classes", classes},
              {"validated_upto", r.validated_upto}};
}

json to_json(const GridScanReport& r) {
  json hits = json::array();
  for (const GridHit& h : r.hits)
    hits.push_back(json{{"m", h.m},
                        {"n", h.n},
                        {"degree", h.degree},
                        {"factor", h.factor.to_string()},
                        {"roots", to_json(h.roots)}});
  return json{{"M", r.M},
              {"N", r.N},
              {"pairs_scanned", r.pairs_scanned},
              {"pairs_exact", r.pairs_exact},
              {"hits", hits},
              {"degenerate_m", u64_list(r.degenerate_m)},
              {"degenerate_n", u64_list(r.degenerate_n)},
              {"stationary_factor", r.stationary_factor.to_string()},
              {"stationary_roots", to_json(r.stationary_roots)},
              {"distinct_rational_solutions", to_json(r.distinct_rational_solutions)},
              {"distinct_solution_lower_bound", r.distinct_solution_lower_bound}};
}

json to_json(const DmlScanResult& r) {
  std::vector<u64> solvable, unverified;
  for (u64 n = 0; n < r.solvable.size(); ++n) {
    if (r.solvable[n]) solvable.push_back(n);
    if (n < r.verified.size() && !r.verified[n]) unverified.push_back(n);
  }
  json systems = json::array();
  for (const PowerSystemResult& s : r.systems) systems.push_back(to_json(s));
  return json{{"mode", dml_mode_name(r.mode)},
              {"horizon", r.horizon},
              {"solvable", u64_list(solvable)},
              {"unverified", u64_list(unverified)},
              {"gcd_degree", r.gcd_degree},
              {"detected", r.detected ? to_json(*r.detected) : json(nullptr)},
              {"systems", systems}};
}

json to_json(const FinitenessReport& r) {
  return json{{"class", finiteness_class_name(r.cls)},
              {"reason", r.reason},
              {"alpha", to_json(r.alpha)},
              {"beta", to_json(r.beta)},
              {"gamma", to_json(r.gamma)},
              {"delta", to_json(r.delta)},
              {"g_affine", r.g_affine},
              {"solutions_per_n", r.solutions_per_n},
              {"distinct_total", r.distinct_total},
              {"last_growth_n", r.last_growth_n},
              {"predicted_finite", r.predicted_finite},
              {"consistent", r.consistent}};
}

json to_json(const ClassificationData& d) {
  json j{{"tag", class_tag_name(d.tag)},
         {"alpha", to_json(d.alpha)},
         {"beta", to_json(d.beta)},
         {"delta", to_json(d.delta)},
         {"gamma", to_json(d.gamma)},
         {"F", d.F.to_string()}};
  if (d.B) j["B"] = d.B->to_string();
  j["p"] = d.p;
  j["q"] = d.q;
  if (d.d) j["d"] = *d.d;
  j["mu"] = to_json(d.mu);
  return j;
}

json to_json(const RelationPairs& r) {
  const RelationLattice& L = r.lattice;
  json gens = json::array();
  for (const auto& g : L.generators) gens.push_back(json::array({to_json(g.first), to_json(g.second)}));
  json base = json::array();
  for (const Int& b : L.base) base.push_back(to_json(b));
  json pts = json::array();
  for (const auto& pr : r.points) pts.push_back(json::array({pr.first, pr.second}));
  return json{{"kind", lattice_kind_name(L.kind)},
              {"base", base},
              {"exp_alpha", L.exp_alpha},
              {"exp_delta", L.exp_delta},
              {"exp_mu", L.exp_mu},
              {"origin", json::array({to_json(L.origin.first), to_json(L.origin.second)})},
              {"generators", gens},
              {"description", L.to_string()},
              {"points", pts}};
}

json to_json(const InfinitudeReport& r) {
  json pts = json::array();
  for (const auto& pr : r.pairs) pts.push_back(json::array({pr.first, pr.second}));
  return json{{"pairs", pts},
              {"solutions", to_json(r.solutions)},
              {"distinct_lower_bound", r.distinct_lower_bound},
              {"nested_counts", r.nested_counts},
              {"grows", r.grows},
              {"degenerate_m", u64_list(r.degenerate_m)},
              {"degenerate_n", u64_list(r.degenerate_n)},
              {"stationary_factor", r.stationary_factor.to_string()}};
}

json to_json(const Fq& F, const CounterexampleReport& r) {
  json steps = json::array();
  for (const CounterexampleStep& s : r.steps)
    steps.push_back(json{{"m", s.m},
                         {"N", s.N},
                         {"lambda", fq::to_string(F, s.lambda)},
                         {"f_divisible", s.f_divisible},
                         {"g_divisible", s.g_divisible}});
  auto map_str = [&](const LinearMapOverK& m) {
    return "(" + fq::to_string(F, m.A) + ")*x + (" + fq::to_string(F, m.B) + ")";
  };
  return json{{"q", r.q},
              {"a", F.to_string(r.a)},
              {"h", fq::to_string(F, r.h, 'x')},
              {"f", map_str(r.f)},
              {"g", map_str(r.g)},
              {"c", to_string(F, r.c)},
              {"steps", steps},
              {"all_divisible", r.all_divisible}};
}

// ---------------------------------------------------------------------------------------
// decoders

GcdSetInstance gcd_instance_from_json(const Reader& r) {
  GcdSetInstance inst;
  if (r.is_array()) {
    // positional (d1, d2, d3, d4, a, b, k)
    if (r.size() != 7) r.error("positional form needs 7 entries (d1, d2, d3, d4, a, b, k)");
    inst.d1 = r.at(0).as_int();
    inst.d2 = r.at(1).as_int();
    inst.d3 = r.at(2).as_int();
    inst.d4 = r.at(3).as_int();
    inst.a = r.at(4).as_int();
    inst.b = r.at(5).as_int();
    inst.k = r.at(6).as_u64();
    if (inst.k == 0) r.at(6).error("k must be positive");
    return inst;
  }
  inst.d1 = r.at("d1").as_int();
  inst.d2 = r.at("d2").as_int();
  inst.d3 = r.at("d3").as_int();
  inst.d4 = r.has("d4") ? r.at("d4").as_int() : inst.d3;
  inst.a = r.at("a").as_int();
  inst.b = r.at("b").as_int();
  inst.k = r.at("k").as_u64();
  if (inst.k == 0) r.at("k").error("k must be positive");
  return inst;
}

GeneralPowerSystem power_system_from_json(const Reader& r) {
  GeneralPowerSystem s;
  s.k = r.at("k").as_u64();
  if (s.k == 0) r.at("k").error("k must be positive");
  s.a = r.at("a").as_int();
  s.b = r.at("b").as_int();
  s.c1 = r.at("c1").as_int();
  s.c2 = r.at("c2").as_int();
  s.d1 = r.at("d1").as_int();
  s.d2 = r.at("d2").as_int();
  s.d3 = r.at("d3").as_int();
  s.d4 = r.has("d4") ? r.at("d4").as_int() : s.d3;
  if (s.d1 <= 1) r.at("d1").error("d1 must exceed 1");
  if (s.d2 <= 1) r.at("d2").error("d2 must exceed 1");
  return s;
}

ClassificationData classification_from_json(const Reader& r) {
  ClassificationData d;
  try {
    d.tag = class_tag_from_name(r.at("tag").as_string());
  } catch (const Error&) {
    r.at("tag").error("expected one of T12-1, T12-2, T13-1, T13-2");
  }
  d.alpha = r.at("alpha").as_rat();
  d.beta = r.at("beta").as_rat();
  d.delta = r.at("delta").as_rat();
  d.gamma = r.at("gamma").as_rat();
  d.F = r.at("F").as_ratfunc();
  if (r.has("B")) d.B = r.at("B").as_poly();
  if (r.has("p")) d.p = r.at("p").as_long();
  if (r.has("q")) d.q = r.at("q").as_long();
  if (r.has("d")) d.d = r.at("d").as_long();
  if (r.has("mu")) d.mu = r.at("mu").as_rat();
  return d;
}

// ---------------------------------------------------------------------------------------
// expressions over F_q(t)

namespace {

KRational kr_const(const FqRat& c) {
  KPoly n{c};
  fq::ktrim(n);
  return KRational{n, KPoly{FqRat{{1}, {1}}}};
}

bool kr_is_zero(const KRational& a) { return a.num.empty(); }

// a single FqRat when the polynomial is constant in x
bool k_constant(const KPoly& p) { return p.size() <= 1; }

KRational kr_add(const Fq& F, const KRational& a, const KRational& b) {
  if (a.den == b.den) {
    KPoly n = fq::kadd(F, a.num, b.num);
    return KRational{n, a.den};
  }
  return KRational{fq::kadd(F, fq::kmul(F, a.num, b.den), fq::kmul(F, b.num, a.den)),
                   fq::kmul(F, a.den, b.den)};
}

KRational kr_neg(const Fq& F, const KRational& a) {
  return KRational{fq::kscale(F, a.num, FqRat{{F.neg(1)}, {1}}), a.den};
}

KRational kr_mul(const Fq& F, const KRational& a, const KRational& b) {
  return KRational{fq::kmul(F, a.num, b.num), fq::kmul(F, a.den, b.den)};
}

KRational kr_div(const Fq& F, const KRational& a, const KRational& b) {
  if (kr_is_zero(b)) fail(ErrorCode::PoleError, "division by zero");
  // constant divisors keep the denominator untouched
  if (k_constant(b.num) && k_constant(b.den))
    return KRational{fq::kscale(F, a.num, fq::rdiv(F, b.den[0], b.num[0])), a.den};
  return KRational{fq::kmul(F, a.num, b.den), fq::kmul(F, a.den, b.num)};
}

class KParser {
 public:
  KParser(const Fq& F, const std::string& s, char xv, char tv) : F_(F), s_(s), xv_(xv), tv_(tv) {}

  KRational parse() {
    KRational v = expr();
    skip();
    if (i_ != s_.size()) bad("unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  const Fq& F_;
  const std::string& s_;
  size_t i_ = 0;
  char xv_, tv_;

  [[noreturn]] void bad(const std::string& m) const {
    fail(ErrorCode::InvalidArgument, "at offset " + std::to_string(i_) + ": " + m);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  KRational expr() {
    KRational v = term();
    for (;;) {
      if (eat('+')) v = kr_add(F_, v, term());
      else if (eat('-')) v = kr_add(F_, v, kr_neg(F_, term()));
      else return v;
    }
  }

  KRational term() {
    KRational v = unary();
    for (;;) {
      if (eat('*')) v = kr_mul(F_, v, unary());
      else if (eat('/')) v = kr_div(F_, v, unary());
      else return v;
    }
  }

  KRational unary() {
    if (eat('-')) return kr_neg(F_, unary());
    if (eat('+')) return unary();
    return power();
  }

  KRational power() {
    KRational b = atom();
    if (!eat('^')) return b;
    skip();
    bool neg = eat('-');
    skip();
    const size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) bad("expected an exponent");
    const u64 e = std::stoull(s_.substr(start, i_ - start));
    KRational out = kr_const(FqRat{{1}, {1}});
    for (u64 k = 0; k < e; ++k) out = kr_mul(F_, out, b);
    if (neg) out = kr_div(F_, kr_const(FqRat{{1}, {1}}), out);
    return out;
  }

  KRational atom() {
    skip();
    if (i_ >= s_.size()) bad("unexpected end of input");
    const char c = s_[i_];
    if (c == '(') {
      ++i_;
      KRational v = expr();
      if (!eat(')')) bad("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      u64 r = 0;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
        r = (r * 10 + static_cast<u64>(s_[i_++] - '0')) % F_.p();
      return kr_const(fq::rat(F_, {static_cast<Fq::Elem>(r)}));
    }
    ++i_;
    if (c == xv_) return KRational{KPoly{FqRat{{}, {1}}, FqRat{{1}, {1}}}, KPoly{FqRat{{1}, {1}}}};
    if (c == tv_) return kr_const(FqRat{{0, 1}, {1}});
    if (c == 'z') {
      if (F_.e() < 2) bad("z names the generator of a proper extension; q is prime here");
      return kr_const(FqRat{{static_cast<Fq::Elem>(F_.p())}, {1}});
    }
    --i_;
    bad("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace

KRational parse_k_rational(const Fq& F, const std::string& text) {
  return KParser(F, text, 'x', 't').parse();
}

FqRat parse_fq_rat(const Fq& F, const std::string& text) {
  const KRational v = parse_k_rational(F, text);
  if (!k_constant(v.num) || !k_constant(v.den)) fail(ErrorCode::InvalidArgument, "expected an element of F_q(t), found x");
  if (v.num.empty()) return FqRat{{}, {1}};
  return fq::rdiv(F, v.num[0], v.den[0]);
}

FqPoly parse_fq_poly(const Fq& F, const std::string& text, char var) {
  const char other = var == 'x' ? 't' : 'x';
  const KRational v = KParser(F, text, var, other).parse();
  // the chosen variable is parsed as x, the other one as t, which must not occur
  if (!k_constant(v.den) || v.den.empty() || v.den[0].den != FqPoly{1} || v.den[0].num.size() != 1)
    fail(ErrorCode::InvalidArgument, "expected a polynomial in " + std::string(1, var));
  const Fq::Elem inv = F.inv(v.den[0].num[0]);
  FqPoly out;
  for (const FqRat& c : v.num) {
    if (c.den != FqPoly{1} || c.num.size() > 1)
      fail(ErrorCode::InvalidArgument, "expected a polynomial in " + std::string(1, var) + " over F_q");
    out.push_back(c.num.empty() ? 0 : F.mul(c.num[0], inv));
  }
  fq::trim(out);
  return out;
}

Bivariate parse_bivariate(const Fq& F, const std::string& text) {
  const KRational v = KParser(F, text, 'X', 'Y').parse();
  if (!k_constant(v.den) || v.den.empty() || v.den[0].den != FqPoly{1} || v.den[0].num.size() != 1)
    fail(ErrorCode::InvalidArgument, "expected a polynomial in X and Y");
  const Fq::Elem inv = F.inv(v.den[0].num[0]);
  Bivariate out;
  for (size_t i = 0; i < v.num.size(); ++i) {
    if (v.num[i].den != FqPoly{1}) fail(ErrorCode::InvalidArgument, "expected a polynomial in X and Y");
    for (size_t j = 0; j < v.num[i].num.size(); ++j)
      if (v.num[i].num[j] != 0)
        out.push_back(BivariateTerm{static_cast<unsigned>(i), static_cast<unsigned>(j),
                                    F.mul(v.num[i].num[j], inv)});
  }
  return out;
}

std::string to_string(const Fq& F, const KPoly& p) {
  if (p.empty()) return "0";
  std::string s;
  for (size_t i = p.size(); i-- > 0;) {
    if (fq::is_zero(p[i])) continue;
    if (!s.empty()) s += " + ";
    s += "(" + fq::to_string(F, p[i]) + ")";
    if (i > 0) s += i > 1 ? "*x^" + std::to_string(i) : "*x";
  }
  return s;
}

std::string to_string(const Fq& F, const KRational& r) {
  return "(" + to_string(F, r.num) + ")/(" + to_string(F, r.den) + ")";
}

}  // namespace itergcd::app
