#include "kron/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kron/parallel.hpp"
#include "kron/quadrature.hpp"
#include "kron/shape.hpp"

namespace kron {

namespace {

std::uint64_t splitmix_mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t Rng::mix(std::uint64_t key, std::uint64_t counter) {
  return splitmix_mix(key ^ splitmix_mix(counter));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
  // Rejection to kill modulo bias.
  std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

mpz_class Rng::below(const mpz_class& bound) {
  if (bound <= 0) throw std::invalid_argument("Rng::below: bound must be positive");
  std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  std::size_t words = (bits + 63) / 64;
  unsigned discard = static_cast<unsigned>(words * 64 - bits);
  while (true) {
    mpz_class r = 0;
    for (std::size_t w = 0; w < words; ++w) {
      r <<= 64;
      r += static_cast<unsigned long>(next());
    }
    r >>= discard;  // uniform over [0, 2^bits)
    if (r < bound) return r;
  }
}

const mpz_class& PartitionCounts::operator()(long long n) {
  ensure(n);
  return counts_[static_cast<std::size_t>(n)];
}

void PartitionCounts::ensure(long long n) {
  if (n < 0) throw std::invalid_argument("PartitionCounts: n must be nonnegative");
  for (long long m = static_cast<long long>(counts_.size()); m <= n; ++m) {
    mpz_class total = 0;
    for (long long k = 1;; ++k) {
      long long g1 = k * (3 * k - 1) / 2;
      long long g2 = k * (3 * k + 1) / 2;
      if (g1 > m && g2 > m) break;
      bool plus = (k % 2 == 1);
      if (g1 <= m) plus ? total += counts_[static_cast<std::size_t>(m - g1)]
                        : total -= counts_[static_cast<std::size_t>(m - g1)];
      if (g2 <= m) plus ? total += counts_[static_cast<std::size_t>(m - g2)]
                        : total -= counts_[static_cast<std::size_t>(m - g2)];
    }
    counts_.push_back(total);
  }
}

const mpz_class& PartitionCounts::at(long long n) const {
  if (n < 0 || n >= static_cast<long long>(counts_.size()))
    throw std::out_of_range("PartitionCounts::at: value not yet computed");
  return counts_[static_cast<std::size_t>(n)];
}

Partition plancherel_sample(long long n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("plancherel_sample: n must be >= 1");
  // Fisher-Yates permutation of 1..n, then row insertion tracking values only.
  std::vector<std::uint32_t> perm(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
  for (long long i = n - 1; i > 0; --i) {
    std::uint64_t j = rng.below(static_cast<std::uint64_t>(i + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  std::vector<std::vector<std::uint32_t>> rows;
  for (std::uint32_t value : perm) {
    std::uint32_t bump = value;
    for (std::size_t r = 0;; ++r) {
      if (r == rows.size()) {
        rows.emplace_back(1, bump);
        break;
      }
      auto& row = rows[r];
      auto it = std::upper_bound(row.begin(), row.end(), bump);
      if (it == row.end()) {
        row.push_back(bump);
        break;
      }
      std::swap(*it, bump);
    }
  }
  std::vector<int> shape(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) shape[r] = static_cast<int>(rows[r].size());
  return Partition(std::move(shape));
}

Partition uniform_sample(long long n, Rng& rng, const PartitionCounts& counts, long long cap) {
  if (n < 1) throw std::invalid_argument("uniform_sample: n must be >= 1");
  if (n > cap) throw resource_limit_error("uniform_sample: n exceeds sampler cap");
  std::vector<int> parts;
  long long m = n;
  mpz_class weight, acc;
  while (m > 0) {
    // Pick (d, j) with probability d * p(m - d*j) / (m * p(m)); scanning by
    // q = d*j keeps the expected work at O(sqrt(m)) big-int ops.
    mpz_class target = rng.below(mpz_class(counts.at(m) * static_cast<long>(m)));
    acc = 0;
    long long chosen_d = 0, chosen_j = 0;
    for (long long q = 1; q <= m && chosen_d == 0; ++q) {
      const mpz_class& tail = counts.at(m - q);
      for (long long d = 1; d * d <= q; ++d) {
        if (q % d != 0) continue;
        // divisor pair (d, q/d)
        weight = tail * static_cast<long>(d);
        acc += weight;
        if (acc > target) { chosen_d = d; chosen_j = q / d; break; }
        long long e = q / d;
        if (e != d) {
          weight = tail * static_cast<long>(e);
          acc += weight;
          if (acc > target) { chosen_d = e; chosen_j = d; break; }
        }
      }
    }
    if (chosen_d == 0) throw std::logic_error("uniform_sample: weight scan overran");
    for (long long c = 0; c < chosen_j; ++c) parts.push_back(static_cast<int>(chosen_d));
    m -= chosen_d * chosen_j;
  }
  return Partition::from_parts(std::move(parts));
}

std::string_view measure_name(Measure m) {
  return m == Measure::Plancherel ? "plancherel" : "uniform";
}

double v_density(double a) {
  if (std::abs(a) > 2.0) throw std::invalid_argument("v_density: |a| must be <= 2");
  double theta = std::acos(a / 2.0);
  double p = theta / std::numbers::pi;
  double s = std::sin(theta) / std::numbers::pi;
  return p - (p * p - s * s);
}

double alpha_constant(double tolerance) {
  if (!(tolerance > 0)) throw std::invalid_argument("alpha_constant: tolerance must be positive");
  return adaptive_simpson([](double a) { return v_density(a); }, -2.0, 2.0, tolerance);
}

double SampleStats::mean() const {
  if (dist_rows_values.empty()) return 0.0;
  double sum = 0;
  for (int v : dist_rows_values) sum += v;
  return sum / static_cast<double>(dist_rows_values.size());
}

double SampleStats::variance() const {
  if (dist_rows_values.size() < 2) return 0.0;
  double mu = mean(), sum = 0;
  for (int v : dist_rows_values) sum += (v - mu) * (v - mu);
  return sum / static_cast<double>(dist_rows_values.size() - 1);
}

double SampleStats::mean_over_sqrt_n() const {
  return n > 0 ? mean() / std::sqrt(static_cast<double>(n)) : 0.0;
}

SampleStats distrows_experiment(Measure measure, long long n, int trials,
                                std::uint64_t seed, int threads, long long uniform_cap,
                                const ContinuousShape* reference) {
  if (trials < 1) throw std::invalid_argument("distrows_experiment: trials must be >= 1");
  SampleStats stats;
  stats.measure = measure;
  stats.n = n;
  stats.trials = trials;
  stats.seed = seed;
  stats.rng_algorithm = std::string(Rng::kAlgorithmId);
  stats.dist_rows_values.assign(static_cast<std::size_t>(trials), 0);
  if (reference) stats.shape_distances.emplace(static_cast<std::size_t>(trials), 0.0);

  PartitionCounts shared_counts;
  if (measure == Measure::Uniform) shared_counts.ensure(n);  // build once, read-only after

  Rng base(seed);
  parallel_for(0, trials, threads, [&](std::int64_t trial) {
    Rng rng = base.derive(static_cast<std::uint64_t>(trial));
    Partition p = measure == Measure::Plancherel
                      ? plancherel_sample(n, rng)
                      : uniform_sample(n, rng, shared_counts, uniform_cap);
    stats.dist_rows_values[static_cast<std::size_t>(trial)] = dist_rows(p);
    if (reference)
      (*stats.shape_distances)[static_cast<std::size_t>(trial)] =
          rescaled_shape_distance(p, *reference);
  });
  return stats;
}

CoverExperimentResult coupled_cover_experiment(Measure measure, int k, long long n,
                                               int trials, Coupling coupling,
                                               std::uint64_t seed, KroneckerOracle& oracle) {
  if (k < 1) throw std::invalid_argument("coupled_cover_experiment: k must be >= 1");
  if (trials < 1) throw std::invalid_argument("coupled_cover_experiment: trials must be >= 1");
  CoverExperimentResult result;
  result.measure = measure;
  result.coupling = coupling;
  result.k = k;
  result.n = n;
  result.trials = trials;
  result.seed = seed;

  PartitionCounts counts;
  if (measure == Measure::Uniform) counts.ensure(n);
  Rng base(seed);
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = base.derive(static_cast<std::uint64_t>(trial));
    std::vector<KroneckerOracle::Factor> factors;
    Partition first;
    for (int i = 0; i < k; ++i) {
      if (coupling == Coupling::Identical && i > 0) {
        factors.emplace_back(first);
        continue;
      }
      Partition p = measure == Measure::Plancherel ? plancherel_sample(n, rng)
                                                   : uniform_sample(n, rng, counts);
      if (i == 0) first = p;
      factors.emplace_back(std::move(p));
    }
    if (oracle.covers(oracle.product_support(factors))) ++result.covering_trials;
  }
  return result;
}

}  // namespace kron
