#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json_io.hpp"

namespace itergcd::app {

struct BatteryOptions {
  u64 seed = 0;
  unsigned threads = 1;
};

// One acceptance criterion. The artifact holds no timings, so reruns are byte-identical.
struct CriterionOutcome {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;  // one line
  json artifact;
};

// Criteria run in-process; determinism (rerunning the whole battery) is checked outside.
inline constexpr int kInProcessCriteria = 9;

std::string criterion_name(int id);
CriterionOutcome run_criterion(int id, const BatteryOptions& opt);

// Triples (f, g, c) for the fast-path agreement check.
struct DmlTriple {
  Poly f, g, c;
};
std::vector<DmlTriple> monomial_triples();
std::vector<DmlTriple> chebyshev_triples();

}  // namespace itergcd::app
