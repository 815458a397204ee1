#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "kron/oracle.hpp"
#include "kron/partition.hpp"
#include "kron/rng.hpp"

namespace kron {

// Cached exact values p(0..n) (pentagonal recurrence), grown on demand.
class PartitionCounts {
 public:
  const mpz_class& operator()(long long n);
  void ensure(long long n);
  // Read-only access for concurrent use; requires a prior ensure(n).
  const mpz_class& at(long long n) const;

 private:
  std::vector<mpz_class> counts_{1};  // p(0) = 1
};

// Plancherel sample via row insertion of a uniformly random permutation:
// the resulting shape has probability dim(lambda)^2 / n!.
Partition plancherel_sample(long long n, Rng& rng);

inline constexpr long long kDefaultUniformCap = 100000;

// Exactly uniform sample over partitions of n. Draws (part, multiplicity)
// blocks with probability d * p(n - d*j) / (n * p(n)) and recurses; needs
// only the 1-D table p(0..n), which must already cover n (see ensure).
Partition uniform_sample(long long n, Rng& rng, const PartitionCounts& counts,
                         long long cap = kDefaultUniformCap);

enum class Measure { Plancherel, Uniform };

std::string_view measure_name(Measure m);

// Density of distinct-row positions for Plancherel-random partitions at
// rescaled position a in [-2, 2]:
//   V(a) = p - (p^2 - s^2),  p = arccos(a/2)/pi,  s = sin(arccos(a/2))/pi.
double v_density(double a);

// integral of V over [-2, 2] by adaptive quadrature; equals 32/(3 pi^2).
double alpha_constant(double tolerance);

struct SampleStats {
  Measure measure = Measure::Plancherel;
  long long n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string rng_algorithm;
  std::vector<int> dist_rows_values;           // one per trial, by trial index
  std::optional<std::vector<double>> shape_distances;

  double mean() const;
  double variance() const;  // sample variance
  double mean_over_sqrt_n() const;
};

class ContinuousShape;

// Runs trials of the chosen sampler and records dist_rows per trial; when a
// reference shape is given, also records the rescaled L1 distance to it.
SampleStats distrows_experiment(Measure measure, long long n, int trials,
                                std::uint64_t seed, int threads = 1,
                                long long uniform_cap = kDefaultUniformCap,
                                const ContinuousShape* reference = nullptr);

enum class Coupling { Independent, Identical };

struct CoverExperimentResult {
  Measure measure = Measure::Plancherel;
  Coupling coupling = Coupling::Independent;
  int k = 0;
  long long n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  int covering_trials = 0;
  double frequency() const { return trials == 0 ? 0.0 : static_cast<double>(covering_trials) / trials; }
};

// Per trial, draws k partitions under the coupling and records whether the
// support of their tensor product covers all of Y_n.
CoverExperimentResult coupled_cover_experiment(Measure measure, int k, long long n,
                                               int trials, Coupling coupling,
                                               std::uint64_t seed, KroneckerOracle& oracle);

}  // namespace kron
