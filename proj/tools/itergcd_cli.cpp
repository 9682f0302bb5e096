#include <iostream>

#include "CLI11.hpp"

#include "commands.hpp"

using itergcd::app::JobConfig;

namespace {

// Flags shared by every subcommand except selftest.
void add_common(CLI::App* sub, JobConfig& c) {
  sub->add_option("--input", c.input, "input JSON file, or inline JSON");
  sub->add_option("--output", c.output, "artifact file (default: stdout)");
  sub->add_option("--horizon", c.horizon, "largest n examined (default 200)");
  sub->add_option("--box", c.box, "grid box size (default 10)");
  sub->add_option("--degree-cap", c.degree_cap, "largest iterate degree formed exactly (default 4096)");
  sub->add_option("--validation-window", c.validation_window, "oracle cross-check window (default 500)");
  sub->add_option("--seed", c.seed, "seed for the modular prime sequence");
  sub->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1u, 256u));
  sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver for simultaneous iterate equations f^m(x) = c1(x), g^n(x) = c2(x)"};
  app.require_subcommand(1);
  JobConfig c;

  struct Simple {
    const char* name;
    const char* help;
  };
  for (const Simple& s : {Simple{"gcd-set", "index set {n : k gcd(d1^n - d3, d2^n - d4) | b(d1^n - d3) - a(d2^n - d4)}"},
                          Simple{"power-sys", "indices n where a twisted power-map system is solvable"},
                          Simple{"lemma-check", "root-of-unity lemma, one case or the exhaustive battery"},
                          Simple{"grid-scan", "pairs (m, n) with a common solution, with the solutions"},
                          Simple{"dml-scan", "indices n with f^n(x) = g^n(x) = c(x) solvable"},
                          Simple{"finiteness", "classify a Mobius pair and count solutions up to the horizon"}}) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, c);
    sub->callback([&c, name = std::string(s.name)] { c.subcommand = name; });
  }

  CLI::App* classify = app.add_subcommand("classify", "families of targets with infinitely many solutions");
  classify->require_subcommand(1);
  for (const char* action : {"build", "verify", "relations", "infinitude"}) {
    CLI::App* sub = classify->add_subcommand(action);
    add_common(sub, c);
    sub->callback([&c, action] {
      c.subcommand = "classify";
      c.action = action;
    });
  }

  CLI::App* poschar = app.add_subcommand("poschar", "positive characteristic checks over F_q(t)");
  poschar->require_subcommand(1);
  CLI::App* pverify = poschar->add_subcommand("verify", "check the two conditions for given data");
  add_common(pverify, c);
  pverify->callback([&c] {
    c.subcommand = "poschar";
    c.action = "verify";
  });
  CLI::App* pexample = poschar->add_subcommand("example", "divisibility family with x - t^(q^m) in both gcds");
  pexample->set_help_flag("--help", "Print this help message and exit");  // frees --h
  add_common(pexample, c);
  pexample->add_option("--q", c.q, "field size, a prime power");
  pexample->add_option("--a", c.a, "nonzero element of F_q");
  pexample->add_option("--h", c.h, "nonconstant polynomial over F_q, e.g. x^2 + 1");
  pexample->add_option("--M", c.M, "largest m");
  pexample->callback([&c] {
    c.subcommand = "poschar";
    c.action = "example";
  });

  CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance battery and write one artifact per criterion");
  selftest->add_option("--output", c.output, "artifact directory (default selftest-artifacts)");
  selftest->add_option("--seed", c.seed, "seed for randomized batteries and modular primes");
  selftest->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1u, 256u));
  selftest->add_option("--criteria", c.criteria, "subset of criteria to run");
  selftest->callback([&c] { c.subcommand = "selftest"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : itergcd::app::kExitUsage;
  }
  return itergcd::app::run(c, std::cout, std::cerr);
}
