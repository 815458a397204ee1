#include <benchmark/benchmark.h>

#include "kron/characters.hpp"
#include "kron/partition.hpp"

namespace {

void BM_CharacterTable(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto table = kron::build_character_table(n);
    benchmark::DoNotOptimize(table.values.back().back());
  }
}
BENCHMARK(BM_CharacterTable)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_CharacterTableParallel(benchmark::State& state) {
  for (auto _ : state) {
    auto table = kron::build_character_table(12, 2);
    benchmark::DoNotOptimize(table.values.back().back());
  }
}
BENCHMARK(BM_CharacterTableParallel)->Unit(benchmark::kMillisecond);

void BM_SingleCharacter(benchmark::State& state) {
  kron::Partition lambda = kron::Partition::parse("[6,4,3,2,1]");
  kron::Partition rho = kron::Partition::parse("[5,4,3,2,1,1]");
  for (auto _ : state)
    benchmark::DoNotOptimize(kron::character(lambda, {rho}));
}
BENCHMARK(BM_SingleCharacter);

void BM_Dimension(benchmark::State& state) {
  kron::Partition big = kron::staircase(30);  // 465 boxes
  for (auto _ : state) {
    auto d = kron::dimension(big);
    benchmark::DoNotOptimize(d.get_mpz_t());
  }
}
BENCHMARK(BM_Dimension);

}  // namespace
