#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "battery.hpp"
#include "itergcd/errors.hpp"
#include "json_io.hpp"

namespace itergcd::app {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Result of one subcommand before it is written out.
struct Outcome {
  json artifact;
  std::string summary;
  std::string csv;  // set when the subcommand supports --format csv
  bool mismatch = false;
};

json load_input(const JobConfig& c, bool required) {
  if (c.input.empty()) {
    if (required) throw UsageError("--input is required for " + c.subcommand);
    return json::object();
  }
  std::string text;
  const char first = c.input.find_first_not_of(" \t\n") == std::string::npos
                         ? ' '
                         : c.input[c.input.find_first_not_of(" \t\n")];
  if (first == '{' || first == '[') {
    text = c.input;
  } else {
    std::ifstream in(c.input);
    if (!in) throw UsageError("cannot read input file '" + c.input + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("input is not valid JSON: ") + e.what());
  }
}

u64 resolve(const std::optional<u64>& flag, const Reader& in, const std::string& key, u64 fallback) {
  if (flag) return *flag;
  return u64_or(in, key, fallback);
}

json header(const JobConfig& c) {
  json j{{"schema", kSchemaVersion}, {"command", c.subcommand}};
  if (!c.action.empty()) j["action"] = c.action;
  return j;
}

// Single objects and {"instances": [...]} both become a list of readers.
std::vector<Reader> instance_list(const Reader& in, bool arrays_are_instances) {
  std::vector<Reader> out;
  if (in.has("instances")) {
    Reader list = in.at("instances");
    for (size_t i = 0; i < list.size(); ++i) out.push_back(list.at(i));
  } else if (in.is_array() && !arrays_are_instances) {
    for (size_t i = 0; i < in.size(); ++i) out.push_back(in.at(i));
  } else {
    out.push_back(in);
  }
  return out;
}

Outcome cmd_gcd_set(const JobConfig& c, const Reader& in) {
  const u64 window = resolve(c.validation_window, in, "validation_window", kDefaultValidationWindow);
  // a flat array of 7 numbers is one positional instance
  const bool positional = in.is_array() && in.size() == 7 && !in.at(0).is_array() && !in.at(0).is_object();
  Outcome o;
  json results = json::array();
  for (const Reader& r : instance_list(in, positional)) {
    const GcdSetInstance inst = gcd_instance_from_json(r);
    const GcdSetResult res = gcd_progression_set(inst, window);
    json entry{{"instance", to_json(inst)}};
    merge(entry, to_json(res));
    results.push_back(entry);
    o.summary += inst.to_string() + " -> " + res.set.to_string() + "\n";
  }
  o.artifact = header(c);
  o.artifact["validation_window"] = window;
  o.artifact["results"] = results;
  return o;
}

Outcome cmd_power_sys(const JobConfig& c, const Reader& in) {
  const u64 horizon = resolve(c.horizon, in, "horizon", kDefaultHorizon);
  const u64 window = resolve(c.validation_window, in, "validation_window", kDefaultValidationWindow);
  Outcome o;
  json results = json::array();
  for (const Reader& r : instance_list(in, false)) {
    const GeneralPowerSystem sys = power_system_from_json(r);
    const PowerSystemResult res = power_system_index_set(sys, horizon, window);
    json entry{{"system", to_json(sys)}};
    merge(entry, to_json(res));
    results.push_back(entry);
    o.summary += "k=" + std::to_string(sys.k) + " d=(" + sys.d1.get_str() + "," + sys.d2.get_str() + "," +
                 sys.d3.get_str() + "," + sys.d4.get_str() + ") -> " + res.set.to_string() + "\n";
  }
  o.artifact = header(c);
  o.artifact["horizon"] = horizon;
  o.artifact["results"] = results;
  return o;
}

Outcome criterion_outcome(const JobConfig& c, int id) {
  const CriterionOutcome r = run_criterion(id, BatteryOptions{c.seed, c.threads});
  Outcome o;
  o.artifact = header(c);
  for (auto& [k, v] : r.artifact.items())
    if (k != "schema") o.artifact[k] = v;
  o.summary = std::string(r.pass ? "PASS" : "FAIL") + " " + r.summary + "\n";
  o.mismatch = !r.pass;
  return o;
}

Outcome cmd_lemma_check(const JobConfig& c, const Reader& in) {
  if (!in.has("A")) return criterion_outcome(c, 1);
  const u64 k = in.at("k").as_u64();
  if (k == 0) in.at("k").error("k must be positive");
  const Int ap = in.at("ap").as_int(), bp = in.at("bp").as_int();
  const Int A = in.at("A").as_int(), B = in.at("B").as_int();
  Outcome o;
  const bool crit = lemma_criterion_signed(k, ap, bp, A, B);
  const auto witness = lemma_witness(k, ap, bp, A, B);
  json oracle = nullptr;
  try {
    oracle = lemma_bruteforce_oracle(k, ap, bp, A, B);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CapExceeded) throw;
  }
  o.mismatch = (oracle.is_boolean() && oracle.get<bool>() != crit) || witness.has_value() != crit;
  o.artifact = header(c);
  o.artifact["input"] = json{{"k", k}, {"ap", to_json(ap)}, {"bp", to_json(bp)}, {"A", to_json(A)}, {"B", to_json(B)}};
  o.artifact["criterion"] = crit;
  o.artifact["oracle"] = oracle;
  o.artifact["witness"] = witness ? json{{"exponent", to_json(witness->exponent)}, {"order", to_json(witness->order)}}
                                  : json(nullptr);
  o.artifact["consistent"] = !o.mismatch;
  o.summary = std::string("solvable: ") + (crit ? "yes" : "no") + (o.mismatch ? " (oracle DISAGREES)" : "") + "\n";
  return o;
}

Outcome cmd_grid_scan(const JobConfig& c, const Reader& in) {
  const MapSpec f = MapSpec::from_ratfunc(in.at("f").as_ratfunc());
  const MapSpec g = MapSpec::from_ratfunc(in.at("g").as_ratfunc());
  const RationalFunction c1 = in.at("c1").as_ratfunc(), c2 = in.at("c2").as_ratfunc();
  const u64 M = c.box ? *c.box : u64_or(in, "M", kDefaultBox);
  const u64 N = c.box ? *c.box : u64_or(in, "N", M);
  GridScanOptions opt;
  opt.degree_cap = resolve(c.degree_cap, in, "degree_cap", kDefaultDegreeCap);
  opt.seed = c.seed;
  opt.threads = c.threads;
  opt.diagonal_only = bool_or(in, "diagonal_only", false);
  const GridScanReport rep = grid_scan(f, g, c1, c2, M, N, opt);
  Outcome o;
  o.artifact = header(c);
  o.artifact["f"] = f.to_string();
  o.artifact["g"] = g.to_string();
  o.artifact["c1"] = c1.to_string();
  o.artifact["c2"] = c2.to_string();
  merge(o.artifact, to_json(rep));
  o.summary = std::to_string(rep.hits.size()) + " solvable pairs in [1," + std::to_string(M) + "]x[1," +
              std::to_string(N) + "], at least " + std::to_string(rep.distinct_solution_lower_bound) +
              " distinct solutions\n";
  o.csv = "m,n,degree,roots\n";
  for (const GridHit& h : rep.hits) {
    std::string roots;
    for (const Rat& r : h.roots) roots += (roots.empty() ? "" : " ") + r.get_str();
    o.csv += std::to_string(h.m) + "," + std::to_string(h.n) + "," + std::to_string(h.degree) + "," + roots + "\n";
  }
  return o;
}

Outcome cmd_dml_scan(const JobConfig& c, const Reader& in) {
  const Poly f = in.at("f").as_poly(), g = in.at("g").as_poly(), cc = in.at("c").as_poly();
  DmlScanOptions opt;
  opt.degree_cap = resolve(c.degree_cap, in, "degree_cap", kDefaultDegreeCap);
  opt.seed = c.seed;
  opt.use_fast_path = bool_or(in, "fast_path", true);
  opt.validation_window = resolve(c.validation_window, in, "validation_window", kDefaultValidationWindow);
  const u64 horizon = resolve(c.horizon, in, "horizon", kDefaultHorizon);
  const DmlScanResult r = dml_scan(f, g, cc, horizon, opt);
  Outcome o;
  o.artifact = header(c);
  o.artifact["f"] = f.to_string();
  o.artifact["g"] = g.to_string();
  o.artifact["c"] = cc.to_string();
  merge(o.artifact, to_json(r));
  u64 count = 0;
  for (bool b : r.solvable) count += b;
  o.summary = std::string(dml_mode_name(r.mode)) + ": " + std::to_string(count) + " solvable n in [0," +
              std::to_string(r.horizon) + "]" + (r.detected ? ", set " + r.detected->to_string() : "") + "\n";
  o.csv = "n,solvable,verified,gcd_degree\n";
  for (u64 n = 0; n < r.solvable.size(); ++n)
    o.csv += std::to_string(n) + "," + (r.solvable[n] ? "1" : "0") + "," + (r.verified[n] ? "1" : "0") + "," +
             std::to_string(n < r.gcd_degree.size() ? r.gcd_degree[n] : -1) + "\n";
  return o;
}

MobiusMap mobius_member(const Reader& in, const std::string& key) {
  const auto m = mobius_from_ratfunc(in.at(key).as_ratfunc());
  if (!m) in.at(key).error("expected a Mobius map (degree one, invertible)");
  return *m;
}

Outcome cmd_finiteness(const JobConfig& c, const Reader& in) {
  const MobiusMap f = mobius_member(in, "f"), g = mobius_member(in, "g");
  const RationalFunction cc = in.at("c").as_ratfunc();
  const u64 horizon = resolve(c.horizon, in, "horizon", kDefaultHorizon);
  GridScanOptions opt;
  opt.degree_cap = resolve(c.degree_cap, in, "degree_cap", kDefaultDegreeCap);
  opt.seed = c.seed;
  opt.threads = c.threads;
  const FinitenessReport r = finiteness_probe(f, g, cc, horizon, opt);
  Outcome o;
  o.artifact = header(c);
  o.artifact["f"] = f.to_string();
  o.artifact["g"] = g.to_string();
  o.artifact["c"] = cc.to_string();
  o.artifact["horizon"] = horizon;
  merge(o.artifact, to_json(r));
  o.summary = std::string(finiteness_class_name(r.cls)) + ", " + std::to_string(r.distinct_total) +
              " distinct solutions up to n = " + std::to_string(horizon) +
              (r.consistent ? "" : " (growth does not match the prediction)") + "\n";
  o.csv = "n,solutions\n";
  for (size_t i = 0; i < r.solutions_per_n.size(); ++i)
    o.csv += std::to_string(i + 1) + "," + std::to_string(r.solutions_per_n[i]) + "\n";
  return o;
}

Outcome cmd_classify(const JobConfig& c, const Reader& in) {
  Outcome o;
  o.artifact = header(c);
  const u64 box = resolve(c.box, in, "box", kDefaultBox);
  if (c.action == "relations" && !in.has("tag")) {
    const Rat alpha = in.at("alpha").as_rat(), delta = in.at("delta").as_rat();
    const Rat mu = in.has("mu") ? in.at("mu").as_rat() : Rat(1);
    const long p = in.has("p") ? in.at("p").as_long() : 1, q = in.has("q") ? in.at("q").as_long() : 1;
    const RelationPairs rel = mu_relation_pairs(alpha, delta, mu, p, q, box);
    o.artifact["box"] = box;
    o.artifact["relations"] = to_json(rel);
    o.summary = rel.lattice.to_string() + ", " + std::to_string(rel.points.size()) + " pairs in the box\n";
    return o;
  }
  const ClassificationData d = classification_from_json(in.has("data") ? in.at("data") : in);
  o.artifact["data"] = to_json(d);
  if (c.action == "build") {
    const auto [c1, c2] = build_c_pair(d);
    o.artifact["c1"] = c1.to_string();
    o.artifact["c2"] = c2.to_string();
    o.artifact["f"] = map_f(d).to_string();
    o.artifact["g"] = map_g(d).to_string();
    o.artifact["verified"] = verify_parametrization(d, c1, c2);
    o.summary = "c1 = " + c1.to_string() + ", c2 = " + c2.to_string() + "\n";
  } else if (c.action == "verify") {
    const RationalFunction c1 = in.at("c1").as_ratfunc(), c2 = in.at("c2").as_ratfunc();
    const bool ok = verify_parametrization(d, c1, c2);
    o.artifact["c1"] = c1.to_string();
    o.artifact["c2"] = c2.to_string();
    o.artifact["verified"] = ok;
    o.mismatch = !ok;
    o.summary = std::string("parametrization ") + (ok ? "holds" : "does NOT hold") + "\n";
  } else if (c.action == "relations") {
    const RelationPairs rel = mu_relation_pairs(d.alpha, d.delta, d.mu, d.p, d.q, box);
    o.artifact["box"] = box;
    o.artifact["relations"] = to_json(rel);
    o.summary = rel.lattice.to_string() + ", " + std::to_string(rel.points.size()) + " pairs in the box\n";
  } else if (c.action == "infinitude") {
    GridScanOptions opt;
    opt.degree_cap = resolve(c.degree_cap, in, "degree_cap", kDefaultDegreeCap);
    opt.seed = c.seed;
    opt.threads = c.threads;
    const InfinitudeReport r = infinitude_check(d, box, opt);
    o.artifact["box"] = box;
    merge(o.artifact, to_json(r));
    o.summary = std::to_string(r.solutions.size()) + " rational solutions, at least " +
                std::to_string(r.distinct_lower_bound) + " distinct over C" + (r.grows ? ", growing" : "") + "\n";
  } else {
    throw UsageError("classify needs one of build, verify, relations, infinitude");
  }
  return o;
}

// a constant expression, e.g. "2" or "z + 1"
Fq::Elem field_element(const Fq& F, const std::string& text) {
  const FqPoly p = parse_fq_poly(F, text, 'x');
  if (p.size() > 1) throw UsageError("'" + text + "' is not an element of F_q");
  return p.empty() ? 0 : p[0];
}

KRational target_member(const Fq& F, const Reader& in, int which) {
  const std::string idx = std::to_string(which);
  if (in.has("C" + idx)) return parse_k_rational(F, in.at("C" + idx).as_string());
  const KRational cc = parse_k_rational(F, in.at("c" + idx).as_string());
  const FqRat fixed = parse_fq_rat(F, in.at("fixed" + idx).as_string());
  if (which == 2 && bool_or(in, "g_inverted", false)) return reduced_target_inverted(F, cc, fixed);
  return reduced_target(F, cc, fixed);
}

Outcome cmd_poschar(const JobConfig& c, const Reader& in) {
  Outcome o;
  o.artifact = header(c);
  if (c.action == "verify") {
    const Fq F = Fq::of_order(in.at("q").as_u64());
    TheoremConditionInput t;
    try {
      t.F = parse_bivariate(F, in.at("F").as_string());
    } catch (const Error& e) {
      in.at("F").error(e.what());
    }
    auto elem = [&](const std::string& key) {
      try {
        return parse_fq_rat(F, in.at(key).as_string());
      } catch (const Error& e) {
        in.at(key).error(e.what());
      }
    };
    t.alpha_root = elem("alpha_root");
    t.delta_root = elem("delta_root");
    t.alpha = elem("alpha");
    t.delta = elem("delta");
    t.e1 = in.has("e1") ? in.at("e1").as_long() : 0;
    t.e2 = in.has("e2") ? in.at("e2").as_long() : 1;
    t.C1 = target_member(F, in, 1);
    t.C2 = target_member(F, in, 2);
    const bool ok = check_theorem_conditions(F, t);
    o.artifact["q"] = F.q();
    o.artifact["C1"] = to_string(F, t.C1);
    o.artifact["C2"] = to_string(F, t.C2);
    o.artifact["conditions_hold"] = ok;
    o.mismatch = !ok;
    o.summary = std::string("conditions ") + (ok ? "hold" : "do NOT hold") + "\n";
    return o;
  }
  if (c.action != "example") throw UsageError("poschar needs verify or example");
  const u64 q = c.q ? *c.q : in.at("q").as_u64();
  const Fq F = Fq::of_order(q);
  const std::string h_text = c.h ? *c.h : (in.has("h") ? in.at("h").as_string() : "x");
  const u64 M = c.M ? *c.M : u64_or(in, "M", 4);
  Fq::Elem a = 1;
  if (c.a) {
    a = field_element(F, *c.a);
  } else if (in.has("a")) {
    const Reader r = in.at("a");
    if (r.is_string()) {
      a = field_element(F, r.as_string());
    } else {
      const u64 code = r.as_u64();
      if (code >= F.q()) r.error("element code must be below q");
      a = static_cast<Fq::Elem>(code);
    }
  }
  const CounterexampleReport r = reproduce_counterexample(F, a, parse_fq_poly(F, h_text, 'x'), M);
  merge(o.artifact, to_json(F, r));
  o.mismatch = !r.all_divisible;
  for (const CounterexampleStep& s : r.steps)
    o.summary += "m=" + std::to_string(s.m) + " N=" + s.N + ": " +
                 (s.f_divisible && s.g_divisible ? "pass" : "FAIL") + "\n";
  return o;
}

int cmd_selftest(const JobConfig& c, std::ostream& out) {
  const fs::path dir = c.output.empty() ? fs::path("selftest-artifacts") : fs::path(c.output);
  fs::create_directories(dir);
  std::vector<int> ids = c.criteria;
  if (ids.empty())
    for (int i = 1; i <= kInProcessCriteria; ++i) ids.push_back(i);
  json summary{{"schema", kSchemaVersion}, {"command", "selftest"}, {"seed", c.seed}};
  json list = json::array();
  bool all = true;
  for (int id : ids) {
    if (id < 1 || id > kInProcessCriteria) throw UsageError("selftest runs criteria 1.." + std::to_string(kInProcessCriteria));
    const CriterionOutcome r = run_criterion(id, BatteryOptions{c.seed, c.threads});
    char name[32];
    std::snprintf(name, sizeof name, "criterion_%02d.json", id);
    std::ofstream(dir / name) << r.artifact.dump(2) << "\n";
    list.push_back(json{{"criterion", id}, {"name", r.name}, {"pass", r.pass}, {"artifact", name}, {"summary", r.summary}});
    out << (r.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << r.name << " (" << r.summary << ")"
        << std::endl;
    all = all && r.pass;
  }
  summary["criteria"] = list;
  summary["all_pass"] = all;
  std::ofstream(dir / "summary.json") << summary.dump(2) << "\n";
  return all ? kExitOk : kExitMismatch;
}

void write_error(std::ostream& err, const json& j) { err << j.dump(2) << "\n"; }

}  // namespace

int run(const JobConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.format != "json" && c.format != "csv") throw UsageError("--format must be json or csv");
    if (c.subcommand == "selftest") return cmd_selftest(c, out);
    const bool input_optional = c.subcommand == "lemma-check" || (c.subcommand == "poschar" && c.action == "example");
    const json doc = load_input(c, !input_optional);
    const Reader in(doc);
    Outcome o;
    if (c.subcommand == "gcd-set") o = cmd_gcd_set(c, in);
    else if (c.subcommand == "power-sys") o = cmd_power_sys(c, in);
    else if (c.subcommand == "lemma-check") o = cmd_lemma_check(c, in);
    else if (c.subcommand == "grid-scan") o = cmd_grid_scan(c, in);
    else if (c.subcommand == "dml-scan") o = cmd_dml_scan(c, in);
    else if (c.subcommand == "finiteness") o = cmd_finiteness(c, in);
    else if (c.subcommand == "classify") o = cmd_classify(c, in);
    else if (c.subcommand == "poschar") o = cmd_poschar(c, in);
    else throw UsageError("unknown subcommand '" + c.subcommand + "'");

    if (c.format == "csv" && o.csv.empty())
      throw UsageError("--format csv is available for grid-scan, dml-scan and finiteness");
    const std::string body = c.format == "csv" ? o.csv : o.artifact.dump(2) + "\n";
    if (c.output.empty()) {
      out << body;
      err << o.summary;
    } else {
      std::ofstream f(c.output);
      if (!f) throw UsageError("cannot write '" + c.output + "'");
      f << body;
      out << o.summary;
    }
    return o.mismatch ? kExitMismatch : kExitOk;
  } catch (const SchemaError& e) {
    write_error(err, json{{"schema", kSchemaVersion}, {"error", "schema"}, {"pointer", e.pointer()}, {"message", e.what()}});
    return kExitUsage;
  } catch (const UsageError& e) {
    write_error(err, json{{"schema", kSchemaVersion}, {"error", "usage"}, {"message", e.what()}});
    return kExitUsage;
  } catch (const Error& e) {
    write_error(err, json{{"schema", kSchemaVersion}, {"error", error_code_name(e.code())}, {"message", e.what()}});
    return e.code() == ErrorCode::ValidationMismatch ? kExitMismatch : kExitUsage;
  }
}

}  // namespace itergcd::app
