#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "itergcd/integer.hpp"
#include "itergcd/iterate_solver.hpp"
#include "itergcd/mobius.hpp"
#include "itergcd/ratfunc.hpp"

namespace itergcd {

// Families of targets (c1, c2) with infinitely many common solutions.
//   CommonFixed*: f = alpha x + beta, g = delta x + gamma
//   NoCommonFixed*: f = alpha x + beta, g = x/(gamma x + delta)
//   *Multiplicative: alpha, delta != 1, targets built from mu F^p and F^q
//   *Translation: one map is a translation, targets built from F^d and B(F)
enum class ClassTag {
  CommonFixedMultiplicative,    // "T12-1"
  CommonFixedTranslation,       // "T12-2": delta = 1
  NoCommonFixedMultiplicative,  // "T13-1"
  NoCommonFixedTranslation,     // "T13-2": alpha = 1
};
const char* class_tag_name(ClassTag t);  // the short labels above
ClassTag class_tag_from_name(const std::string& s);

struct ClassificationData {
  ClassTag tag = ClassTag::CommonFixedMultiplicative;
  Rat alpha, beta, delta, gamma;
  RationalFunction F;
  std::optional<Poly> B;  // translation tags
  long p = 1, q = 1;      // coprime, nonzero (multiplicative tags)
  std::optional<long> d;  // translation tags
  Rat mu = 1;
};

// Throws DegenerateData when the data invariants fail.
void validate(const ClassificationData& data);
MobiusMap map_f(const ClassificationData& data);
MobiusMap map_g(const ClassificationData& data);
std::pair<RationalFunction, RationalFunction> build_c_pair(const ClassificationData& data);
// The defining identities of the tag, tested as exact rational-function equalities.
bool verify_parametrization(const ClassificationData& data, const RationalFunction& c1,
                            const RationalFunction& c2);

// Solutions (m, n) in Z^2 of mu^q delta^(n p) = alpha^(m q).
struct RelationLattice {
  enum class Kind { Empty, Point, Line, Plane };
  Kind kind = Kind::Empty;
  std::vector<Int> base;  // pairwise coprime integers > 1 spanning alpha, delta, mu
  std::vector<long> exp_alpha, exp_delta, exp_mu;  // exponents over base
  bool neg_alpha = false, neg_delta = false, neg_mu = false;
  // solutions are origin + integer combinations of generators (none for a point)
  std::pair<Int, Int> origin;
  std::vector<std::pair<Int, Int>> generators;
  bool contains(const Int& m, const Int& n) const;
  std::string to_string() const;
};
const char* lattice_kind_name(RelationLattice::Kind k);

struct RelationPairs {
  RelationLattice lattice;
  std::vector<std::pair<u64, u64>> points;  // in [1, box]^2, ordered
};

// Throws InvalidArgument if alpha, delta or mu vanishes or p, q is zero.
RelationPairs mu_relation_pairs(const Rat& alpha, const Rat& delta, const Rat& mu, long p, long q,
                                u64 box);

struct InfinitudeReport {
  std::vector<std::pair<u64, u64>> pairs;  // relation pairs scanned (all pairs for translation tags)
  std::vector<Rat> solutions;              // distinct rational lambda on those pairs
  long distinct_lower_bound = 0;           // over C, from factor degrees
  std::vector<long> nested_counts;         // index b-1: distinct lambda on pairs inside [1, b]^2
  bool grows = false;                      // count at box exceeds count at box/2
  std::vector<u64> degenerate_m, degenerate_n;
  Poly stationary_factor;
};

InfinitudeReport infinitude_check(const ClassificationData& data, u64 box,
                                  const GridScanOptions& opt = {});

}  // namespace itergcd
