#include <benchmark/benchmark.h>

#include "kron/partition.hpp"
#include "kron/random.hpp"

namespace {

void BM_PlancherelSample(benchmark::State& state) {
  long long n = state.range(0);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    kron::Rng rng = kron::Rng(17).derive(trial++);
    auto p = kron::plancherel_sample(n, rng);
    benchmark::DoNotOptimize(p.num_rows());
  }
}
BENCHMARK(BM_PlancherelSample)->Arg(1000)->Arg(4000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_UniformSample(benchmark::State& state) {
  long long n = state.range(0);
  kron::PartitionCounts counts;
  counts.ensure(n);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    kron::Rng rng = kron::Rng(23).derive(trial++);
    auto p = kron::uniform_sample(n, rng, counts);
    benchmark::DoNotOptimize(p.num_rows());
  }
}
BENCHMARK(BM_UniformSample)->Arg(1000)->Arg(4000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_PartitionCountTable(benchmark::State& state) {
  long long n = state.range(0);
  for (auto _ : state) {
    kron::PartitionCounts counts;
    counts.ensure(n);
    benchmark::DoNotOptimize(counts(n).get_mpz_t());
  }
}
BENCHMARK(BM_PartitionCountTable)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_DistRowsExperiment(benchmark::State& state) {
  for (auto _ : state) {
    auto stats = kron::distrows_experiment(kron::Measure::Plancherel, 2000, 20, 5, 2);
    benchmark::DoNotOptimize(stats.mean());
  }
}
BENCHMARK(BM_DistRowsExperiment)->Unit(benchmark::kMillisecond);

}  // namespace
