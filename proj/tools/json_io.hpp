#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "itergcd/classification.hpp"
#include "itergcd/eps.hpp"
#include "itergcd/gcd_progressions.hpp"
#include "itergcd/iterate_solver.hpp"
#include "itergcd/positive_char.hpp"
#include "itergcd/power_systems.hpp"

namespace itergcd::app {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Input that does not match a subcommand's schema; pointer is an RFC 6901 JSON pointer.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string pointer, const std::string& msg)
      : std::runtime_error(pointer + ": " + msg), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

// Read-only cursor into an input document that remembers where it is.
class Reader {
 public:
  explicit Reader(const json& j, std::string pointer = "") : j_(&j), ptr_(std::move(pointer)) {}

  const json& raw() const { return *j_; }
  const std::string& pointer() const { return ptr_; }
  bool has(const std::string& key) const;
  Reader at(const std::string& key) const;  // required member
  Reader at(size_t i) const;
  size_t size() const;  // arrays only
  bool is_array() const { return j_->is_array(); }
  bool is_object() const { return j_->is_object(); }
  bool is_string() const { return j_->is_string(); }

  Int as_int() const;  // JSON integer or decimal string
  Rat as_rat() const;  // JSON integer or "p/q" string
  u64 as_u64() const;
  long as_long() const;
  bool as_bool() const;
  std::string as_string() const;
  Poly as_poly() const;  // expression in x
  RationalFunction as_ratfunc() const;

  [[noreturn]] void error(const std::string& msg) const { throw SchemaError(ptr_, msg); }

 private:
  const json* j_;
  std::string ptr_;
};

// Copies the members of src into dst, overwriting equal keys.
void merge(json& dst, const json& src);

// Optional member with a default.
u64 u64_or(const Reader& r, const std::string& key, u64 fallback);
bool bool_or(const Reader& r, const std::string& key, bool fallback);

json to_json(const Int& v);  // number when it fits in 64 bits, decimal string otherwise
json to_json(const Rat& v);  // always a string
json to_json(const EPS& s);
EPS eps_from_json(const Reader& r);
json to_json(const std::vector<Rat>& v);
json to_json(const GcdSetInstance& inst);
json to_json(const GcdSetResult& r);
json to_json(const GeneralPowerSystem& s);
json to_json(const PowerSystemResult& r);
json to_json(const GridScanReport& r);
json to_json(const DmlScanResult& r);
json to_json(const FinitenessReport& r);
json to_json(const ClassificationData& d);
json to_json(const RelationPairs& r);
json to_json(const InfinitudeReport& r);
json to_json(const Fq& F, const CounterexampleReport& r);

GcdSetInstance gcd_instance_from_json(const Reader& r);
GeneralPowerSystem power_system_from_json(const Reader& r);
ClassificationData classification_from_json(const Reader& r);

// Expressions over F_q(t) in x with integer literals (read in the prime field), t, x and
// + - * / ^ ( ). The element z stands for the class of the generator in F_q = F_p[z]/(m).
KRational parse_k_rational(const Fq& F, const std::string& text);
FqRat parse_fq_rat(const Fq& F, const std::string& text);  // must not involve x
FqPoly parse_fq_poly(const Fq& F, const std::string& text, char var);
// Terms c X^i Y^j, e.g. "X^2 + Y^2 + X + 1".
Bivariate parse_bivariate(const Fq& F, const std::string& text);
std::string to_string(const Fq& F, const KPoly& p);
std::string to_string(const Fq& F, const KRational& r);

}  // namespace itergcd::app
