// Microbenchmarks for the hot paths: canonicalization, k*, the harmonic
// equilibrium solver, equilibrium enumeration and I-GSP.

#include <benchmark/benchmark.h>

#include "mech/auctions.hpp"
#include "mech/benchmarks.hpp"
#include "mech/equilibrium.hpp"
#include "mech/harness.hpp"
#include "mech/instance.hpp"
#include "mech/rules.hpp"

namespace {

mech::Instance instance_of_size(int n) {
  return mech::sample_instance_paired(mech::CostDistribution::Uniform01, n,
                                      0x9E3779B97F4A7C15ull + n);
}

void BM_MakeInstance(benchmark::State& state) {
  const auto inst = instance_of_size(static_cast<int>(state.range(0)));
  const auto agents = inst.agents();
  for (auto _ : state) {
    benchmark::DoNotOptimize(mech::make_instance(agents, inst.deadline()));
  }
}
BENCHMARK(BM_MakeInstance)->Arg(100)->Arg(1000);

void BM_DecentralizationFactor(benchmark::State& state) {
  const auto inst = instance_of_size(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mech::decentralization_factor(inst));
  }
}
BENCHMARK(BM_DecentralizationFactor)->Arg(100)->Arg(1000);

void BM_HarmonicOffset(benchmark::State& state) {
  const int ell = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mech::harmonic_offset(ell));
  }
}
BENCHMARK(BM_HarmonicOffset)->Arg(32)->Arg(256)->Arg(2048);

void BM_SolveEqual(benchmark::State& state) {
  const auto inst = instance_of_size(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mech::solve_equal(inst));
  }
}
BENCHMARK(BM_SolveEqual)->Arg(100)->Arg(1000);

void BM_SolveHarmonic(benchmark::State& state) {
  const auto inst = instance_of_size(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mech::solve_harmonic(inst));
  }
}
BENCHMARK(BM_SolveHarmonic)->Arg(100)->Arg(1000);

void BM_EnumerateEquilibria(benchmark::State& state) {
  const auto inst = instance_of_size(static_cast<int>(state.range(0)));
  const auto rule = mech::RewardRule::harmonic();
  for (auto _ : state) {
    benchmark::DoNotOptimize(mech::enumerate_equilibria(rule, inst));
  }
}
BENCHMARK(BM_EnumerateEquilibria)->Arg(8)->Arg(12);

void BM_Igsp(benchmark::State& state) {
  const auto inst = instance_of_size(static_cast<int>(state.range(0)));
  const auto bids = mech::truthful_bids(inst);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mech::igsp(bids, 8));
  }
}
BENCHMARK(BM_Igsp)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
