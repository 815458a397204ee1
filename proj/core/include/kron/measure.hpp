#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "kron/oracle.hpp"
#include "kron/partition.hpp"

namespace kron {

struct MeasuredSupport {
  Support support;
  mpq_class measure;  // sum of dim(lambda)^2 / n! over members, exact
};

// Plancherel measure of a support as an exact rational.
mpq_class plancherel_measure(const Support& s);
MeasuredSupport measured(Support s);

// If M(V) + M(W) > 1 the product support must cover all of Y_n; reports
// whether that held. Not applicable when the measures sum to at most 1.
struct PigeonholeReport {
  bool applicable = false;
  mpq_class measure_v;
  mpq_class measure_w;
  bool covered = false;
  bool passed() const { return !applicable || covered; }
  std::string to_string() const;
};
PigeonholeReport pigeonhole_check(const Support& v, const Support& w, KroneckerOracle& oracle);

// Tensoring a support with any single irreducible cannot shrink its
// Plancherel measure.
struct MonotonicityReport {
  mpq_class before;
  mpq_class after;
  bool passed() const { return after >= before; }
  std::string to_string() const;
};
MonotonicityReport monotonicity_check(const Support& v, const Partition& l,
                                      KroneckerOracle& oracle);

// Plancherel measure of the staircase tensor square at triangular sizes.
struct SaxlMeasurePoint {
  int r = 0;
  int n = 0;
  mpq_class measure;
};
std::vector<SaxlMeasurePoint> saxl_measure_trend(int r_max, KroneckerOracle& oracle);

// Dimension-data model of the affine group over F_p: p-1 one-dimensional
// irreducibles closed under tensoring plus one of dimension p-1. Taking V, W
// to be the one-dimensional block gives uniform measures summing above 1
// while the product still misses the large irreducible; the Plancherel
// measures stay consistent with the pigeonhole bound.
struct AffineDemoReport {
  int p = 0;
  mpq_class uniform_measure_each;    // (p-1)/p
  mpq_class uniform_measure_sum;     // 2(p-1)/p, exceeds 1
  bool product_covers = false;       // always false: 1-dim block is closed
  mpq_class plancherel_measure_each; // (p-1)/(p(p-1)) = 1/p
  mpq_class plancherel_measure_sum;  // 2/p, at most 1 for p >= 2
  bool demonstrates_failure() const;
  std::string to_string() const;
};
AffineDemoReport affine_counterexample_demo(int p);

}  // namespace kron
