#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <sstream>

#include "commands.hpp"
#include "json_io.hpp"

namespace itergcd::app {
namespace {

struct JobResult {
  int rc = 0;
  std::string out, err;
};

JobResult run_job(const JobConfig& c) {
  std::ostringstream out, err;
  JobResult r;
  r.rc = run(c, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

JobConfig job(const std::string& sub, const std::string& input, const std::string& action = "") {
  JobConfig c;
  c.subcommand = sub;
  c.action = action;
  c.input = input;
  return c;
}

TEST(Json, EpsRoundTrip) {
  std::vector<EPS> sets = {EPS::empty(), EPS::all(), EPS::residue_class(3, 7), EPS::finite({0, 4, 5}),
                           eps_union(EPS::finite({1}), EPS::residue_class(0, 6))};
  EPS u = EPS::residue_class(1, 4);
  u.certified = false;
  sets.push_back(u);
  for (const EPS& s : sets) {
    const json j = to_json(s);
    const json reparsed = json::parse(j.dump());
    EXPECT_EQ(eps_from_json(Reader(reparsed)), s) << j.dump();
  }
}

TEST(Json, EpsRejectsNonCanonicalInput) {
  const json bad = json::parse(R"({"threshold":0,"period":2,"residues":[5],"exceptional":[],"certified":true})");
  try {
    eps_from_json(Reader(bad));
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.pointer(), "/residues");
  }
}

TEST(Json, NumbersAndRationals) {
  EXPECT_EQ(to_json(Int(42)), json(42));
  EXPECT_EQ(to_json(Int("123456789012345678901234567890")), json("123456789012345678901234567890"));
  EXPECT_EQ(to_json(Rat(3, 4)), json("3/4"));
  const json j = json::parse(R"({"a": "-7/21", "b": 5, "c": "99999999999999999999999"})");
  EXPECT_EQ(Reader(j).at("a").as_rat(), Rat(-1, 3));
  EXPECT_EQ(Reader(j).at("b").as_rat(), Rat(5));
  EXPECT_EQ(Reader(j).at("c").as_int(), Int("99999999999999999999999"));
}

TEST(Json, GcdInstanceForms) {
  const json pos = json::parse("[3, 5, 1, 1, 1, 1, 2]");
  const json obj = json::parse(R"({"d1": 3, "d2": 5, "d3": 1, "a": 1, "b": 1, "k": 2})");
  const GcdSetInstance a = gcd_instance_from_json(Reader(pos)), b = gcd_instance_from_json(Reader(obj));
  EXPECT_EQ(a.to_string(), b.to_string());
  EXPECT_EQ(b.d4, 1);
  const GcdSetInstance c = gcd_instance_from_json(Reader(json::parse(to_json(a).dump())));
  EXPECT_EQ(c.to_string(), a.to_string());
}

TEST(Json, ClassificationDataRoundTrip) {
  const json j = json::parse(R"({"tag": "T12-1", "alpha": 2, "beta": 0, "delta": 4, "gamma": 0,
                                 "F": "x", "p": 1, "q": 2, "mu": 1})");
  const ClassificationData d = classification_from_json(Reader(j));
  const ClassificationData e = classification_from_json(Reader(json::parse(to_json(d).dump())));
  EXPECT_EQ(build_c_pair(d), build_c_pair(e));
  EXPECT_EQ(to_json(d).dump(), to_json(e).dump());
}

TEST(KParser, FieldSyntax) {
  const Fq F4 = Fq::of_order(4);
  EXPECT_EQ(parse_fq_rat(F4, "z*t + 1"), (FqRat{{1, 2}, {1}}));
  EXPECT_EQ(parse_fq_rat(F4, "z^3"), parse_fq_rat(F4, "1"));
  EXPECT_EQ(parse_fq_rat(F4, "t^-1"), (FqRat{{1}, {0, 1}}));
  const Fq F3 = Fq::of_order(3);
  EXPECT_EQ(parse_fq_rat(F3, "4*t - 1"), parse_fq_rat(F3, "t + 2"));
  EXPECT_EQ(parse_fq_poly(F3, "x^2 - 1", 'x'), (FqPoly{2, 0, 1}));
  EXPECT_THROW(parse_fq_rat(F3, "z"), std::exception);
  EXPECT_THROW(parse_fq_rat(F3, "x + t"), std::exception);
  EXPECT_THROW(parse_fq_rat(F3, "t +"), std::exception);
  EXPECT_EQ(F4.to_string(2), "(z)");
  EXPECT_EQ(F4.to_string(3), "(z + 1)");
  EXPECT_EQ(F3.to_string(2), "2");
}

TEST(Commands, GcdSetPositionalAndSchemaErrors) {
  JobResult r = run_job(job("gcd-set", "[3, 5, 1, 1, 1, 1, 2]"));
  ASSERT_EQ(r.rc, kExitOk) << r.err;
  const json a = json::parse(r.out);
  EXPECT_EQ(a["schema"], 1);
  EXPECT_EQ(a["results"][0]["set"]["period"], 2);
  EXPECT_EQ(a["results"][0]["set"]["residues"], json::parse("[0]"));
  EXPECT_EQ(a["results"][0]["set"]["certified"], true);

  JobResult bad = run_job(job("gcd-set", R"({"d1": 3, "d2": "five", "d3": 1, "a": 1, "b": 1, "k": 2})"));
  EXPECT_EQ(bad.rc, kExitUsage);
  const json e = json::parse(bad.err);
  EXPECT_EQ(e["error"], "schema");
  EXPECT_EQ(e["pointer"], "/d2");

  JobResult nonjson = run_job(job("gcd-set", "{not json"));
  EXPECT_EQ(nonjson.rc, kExitUsage);
  EXPECT_EQ(json::parse(nonjson.err)["pointer"], "");

  JobResult missing = run_job(job("gcd-set", ""));
  EXPECT_EQ(missing.rc, kExitUsage);
  EXPECT_EQ(json::parse(missing.err)["error"], "usage");
}

TEST(Commands, VerificationFailuresExitWithMismatch) {
  JobResult ok = run_job(job("lemma-check", R"({"k": 2, "ap": 1, "bp": 1, "A": 8, "B": 24})"));
  EXPECT_EQ(ok.rc, kExitOk);
  JobResult good = run_job(job("classify",
                         R"({"tag": "T12-1", "alpha": 2, "beta": 0, "delta": 4, "gamma": 0, "F": "x",
                             "p": 1, "q": 2, "c1": "x^2", "c2": "x^3"})",
                         "verify"));
  EXPECT_EQ(good.rc, kExitOk) << good.err;
  JobResult wrong = run_job(job("classify",
                          R"({"tag": "T12-1", "alpha": 2, "beta": 0, "delta": 4, "gamma": 0, "F": "x",
                              "p": 1, "q": 2, "c1": "x^2 + 1", "c2": "x^3"})",
                          "verify"));
  EXPECT_EQ(wrong.rc, kExitMismatch);
}

TEST(Commands, CsvOnlyWhereSupported) {
  JobConfig c = job("dml-scan", R"({"f": "x^2", "g": "-x^2", "c": "-x"})");
  c.horizon = 6;
  c.format = "csv";
  JobResult r = run_job(c);
  ASSERT_EQ(r.rc, kExitOk) << r.err;
  EXPECT_NE(r.out.substr(0, r.out.find('\n')).find(','), std::string::npos);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 8);  // header and n = 0..6

  JobConfig g = job("gcd-set", "[3, 5, 1, 1, 1, 1, 2]");
  g.format = "csv";
  EXPECT_EQ(run_job(g).rc, kExitUsage);
}

TEST(Commands, ArtifactsCarrySchemaAndAreDeterministic) {
  std::vector<JobConfig> jobs = {
      job("gcd-set", R"({"instances": [[3, 5, 1, 1, 1, 1, 2], [6, 10, 7, 7, 3, 1, 12]]})"),
      job("power-sys", R"({"k": 2, "a": 0, "b": 0, "c1": 1, "c2": 1, "d1": 3, "d2": 5, "d3": 1})"),
      job("grid-scan", R"({"f": "2*x", "g": "x+1", "c1": "x^2", "c2": "x^2", "M": 2, "N": 12})"),
      job("dml-scan", R"({"f": "2*x^2-1", "g": "-2*x^2+1", "c": "-x"})"),
      job("finiteness", R"({"f": "2*x+1", "g": "3*x", "c": "x^2"})"),
      job("classify", R"({"tag": "T12-2", "alpha": 2, "beta": 1, "delta": 1, "gamma": 1, "F": "x", "B": "x", "d": 1})",
          "build"),
      job("classify", R"({"alpha": -6, "delta": 36, "mu": "-1/6"})", "relations"),
      job("classify", R"({"tag": "T12-1", "alpha": 2, "beta": 0, "delta": 4, "gamma": 0, "F": "x", "p": 1, "q": 2})",
          "infinitude"),
      job("poschar", R"({"q": 3, "a": 2, "h": "x^2", "M": 2})", "example"),
  };
  jobs[4].horizon = 8;
  jobs[7].box = 5;
  for (const JobConfig& c : jobs) {
    JobResult a = run_job(c), b = run_job(c);
    ASSERT_EQ(a.rc, kExitOk) << c.subcommand << " " << c.action << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << c.subcommand;
    const json j = json::parse(a.out);
    EXPECT_EQ(j["schema"], kSchemaVersion) << c.subcommand;
    EXPECT_EQ(j["command"], c.subcommand);
  }
}

TEST(Commands, EmbeddedSetsReparse) {
  JobResult r = run_job(job("gcd-set", R"({"instances": [[3, 5, 1, 1, 1, 1, 2], [2, 3, 1, 1, 0, 1, 2]]})"));
  ASSERT_EQ(r.rc, kExitOk);
  const json j = json::parse(r.out);
  for (const json& res : j["results"]) {
    const EPS s = eps_from_json(Reader(res["set"]));
    EXPECT_EQ(to_json(s), res["set"]);
  }
}

#ifdef ITERGCD_CLI_PATH
JobResult run_binary(const std::string& args) {
  const std::string cmd = std::string(ITERGCD_CLI_PATH) + " " + args + " 2>/dev/null";
  JobResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, "", ""};
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

TEST(Binary, ExitCodesAndDeterminism) {
  JobResult a = run_binary("gcd-set --input '[3, 5, 1, 1, 1, 1, 2]'");
  JobResult b = run_binary("gcd-set --input '[3, 5, 1, 1, 1, 1, 2]'");
  EXPECT_EQ(a.rc, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run_binary("no-such-command").rc, 1);
  EXPECT_EQ(run_binary("gcd-set --input '{\"d1\": 3}'").rc, 1);
  EXPECT_EQ(run_binary("poschar example --q 2 --a 1 --h x --M 2").rc, 0);
  EXPECT_EQ(run_binary("poschar example --q 2 --a 0 --h x --M 2").rc, 1);
}
#endif

}  // namespace
}  // namespace itergcd::app
