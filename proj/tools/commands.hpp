#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "itergcd/integer.hpp"

namespace itergcd::app {

inline constexpr u64 kDefaultHorizon = 200;
inline constexpr u64 kDefaultBox = 10;
inline constexpr u64 kDefaultValidationWindow = 500;

// Everything a run depends on. Unset overrides fall back to the input document, then to
// the defaults above.
struct JobConfig {
  std::string subcommand;  // gcd-set, power-sys, lemma-check, grid-scan, dml-scan, finiteness,
                           // classify, poschar, selftest
  std::string action;      // classify: build|verify|relations|infinitude; poschar: verify|example
  std::string input;       // path, or inline JSON when it starts with '{' or '['
  std::string output;      // file; a directory for selftest
  std::optional<u64> horizon, box, degree_cap, validation_window;
  u64 seed = 0;
  unsigned threads = 1;
  std::string format = "json";
  // poschar example
  std::optional<u64> q, M;
  std::optional<std::string> a, h;
  // selftest subset, empty for all
  std::vector<int> criteria;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitMismatch = 2;

// Writes the artifact (to config.output, else to out) and a readable summary (to out when
// the artifact went to a file, else to err). Returns the exit status.
int run(const JobConfig& config, std::ostream& out, std::ostream& err);

}  // namespace itergcd::app
