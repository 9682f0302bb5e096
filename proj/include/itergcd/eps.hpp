#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "itergcd/integer.hpp"

namespace itergcd {

// A subset of N given by a finite exceptional prefix and residues modulo a period.
// Canonical form: period minimal, then threshold minimal.
struct EventuallyPeriodicSet {
  u64 threshold = 0;
  u64 period = 1;
  std::vector<u64> residues;     // sorted, in [0, period)
  std::vector<u64> exceptional;  // sorted, < threshold
  bool certified = true;

  bool contains(u64 n) const;
  bool is_empty() const { return residues.empty() && exceptional.empty(); }
  bool is_all() const { return threshold == 0 && period == 1 && residues.size() == 1; }
  std::string to_string() const;
  // same set and same flag; only meaningful between canonical values
  bool operator==(const EventuallyPeriodicSet&) const = default;

  static EventuallyPeriodicSet empty();
  static EventuallyPeriodicSet all();
  static EventuallyPeriodicSet residue_class(u64 r, u64 m);  // {n : n = r mod m}
  static EventuallyPeriodicSet at_least(u64 n0);             // {n : n >= n0}
  static EventuallyPeriodicSet finite(std::vector<u64> elems);
  // Set agreeing with pred on [0, threshold + period) and periodic beyond; canonicalized.
  static EventuallyPeriodicSet from_predicate(u64 threshold, u64 period,
                                              const std::function<bool(u64)>& pred,
                                              bool certified = true);
};

using EPS = EventuallyPeriodicSet;

// Upper bound on threshold + period handled by set algebra.
inline constexpr u64 kEpsWindowCap = 50'000'000;

EPS canonical(const EPS& s);
EPS eps_union(const EPS& a, const EPS& b);
EPS eps_intersect(const EPS& a, const EPS& b);
EPS eps_complement(const EPS& a);
EPS eps_difference(const EPS& a, const EPS& b);
// set equality (certified flags ignored)
bool eps_equal(const EPS& a, const EPS& b);
bool eps_subset(const EPS& a, const EPS& b);

// Minimal (threshold, period) fitting the window with >= 3 confirming repetitions; result
// is marked uncertified. Throws NoPeriodFound.
EPS detect_period(const std::vector<bool>& samples);

}  // namespace itergcd
