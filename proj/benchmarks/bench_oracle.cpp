#include <benchmark/benchmark.h>

#include "kron/oracle.hpp"

namespace {

void BM_Kronecker(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  kron::KroneckerOracle oracle;
  auto parts = kron::partitions_of(n);
  const auto& mid = parts[parts.size() / 2];
  oracle.kronecker(mid, mid, mid);  // warm the table
  for (auto _ : state) {
    auto g = oracle.kronecker(mid, mid, mid);
    benchmark::DoNotOptimize(g.get_mpz_t());
  }
}
BENCHMARK(BM_Kronecker)->Arg(8)->Arg(10)->Arg(12);

void BM_TensorSupportUncached(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto parts = kron::partitions_of(n);
  const auto& mid = parts[parts.size() / 2];
  for (auto _ : state) {
    kron::KroneckerOracle oracle;  // fresh memo each round
    oracle.table(n);
    auto s = oracle.tensor_support(mid, mid);
    benchmark::DoNotOptimize(s.members.size());
  }
}
BENCHMARK(BM_TensorSupportUncached)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_SaxlSweep(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    kron::KroneckerOracle oracle;
    int witnesses = 0;
    for (const auto& l : kron::partitions_of(n))
      if (oracle.saxl_check(l)) ++witnesses;
    benchmark::DoNotOptimize(witnesses);
  }
}
BENCHMARK(BM_SaxlSweep)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
