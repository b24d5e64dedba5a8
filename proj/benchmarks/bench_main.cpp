#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "qrepeater/chain_model.hpp"
#include "qrepeater/link_model.hpp"
#include "qrepeater/oracle/fock.hpp"
#include "qrepeater/oracle/sbsa.hpp"
#include "qrepeater/phase_model.hpp"

using namespace qrep;

static void BM_SwapStepSt(benchmark::State& state) {
  const Mixture m = initial_state(Scheme::ST);
  for (auto _ : state) benchmark::DoNotOptimize(swap_step(Scheme::ST, m, 0.81));
}
BENCHMARK(BM_SwapStepSt);

static void BM_ExpectedHeraldsSt(benchmark::State& state) {
  SimParams p = presets::elementary_comparison(state.range(0));
  p.link_length_km = 50.0;
  for (auto _ : state) benchmark::DoNotOptimize(expected_heralds(Scheme::ST, p));
}
BENCHMARK(BM_ExpectedHeraldsSt)->Arg(10)->Arg(100)->Arg(1000);

static void BM_TotalTime(benchmark::State& state) {
  SimParams p = presets::chain_realistic();
  p.link_length_km = 50.0;
  const int J = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(total_time(Scheme::ST, J, p));
}
BENCHMARK(BM_TotalTime)->DenseRange(1, 5);

static void BM_OptimizeLinks(benchmark::State& state) {
  const SimParams p = presets::chain_realistic();
  const std::vector<int> js{1, 2, 3, 4, 5};
  for (auto _ : state) benchmark::DoNotOptimize(optimize_links(Scheme::SS, 400.0, js, p));
}
BENCHMARK(BM_OptimizeLinks);

static void BM_McElementary(benchmark::State& state) {
  SimParams p = presets::elementary_comparison(10);
  p.link_length_km = 50.0;
  const McOptions opt{static_cast<std::uint64_t>(state.range(0)), 7, 1};
  for (auto _ : state) benchmark::DoNotOptimize(mc_elementary(Scheme::SS, p, opt));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_McElementary)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_EnumerateSbsa(benchmark::State& state) {
  oracle::RationalMixture m;
  m.scheme = Scheme::ST;
  m.c11 = oracle::Rational(1, 2);
  m.c20 = oracle::Rational(1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::enumerate_sbsa(m, m, oracle::Rational(1, 2)));
}
BENCHMARK(BM_EnumerateSbsa)->Unit(benchmark::kMicrosecond);

static void BM_HeraldCbsa(benchmark::State& state) {
  PhaseConfig c = uniform_phase_config(2e14, 2e14);
  c.L_Bi = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::herald_cbsa(c, 0.05, {oracle::Port::Plus, 0, 0}));
  }
}
BENCHMARK(BM_HeraldCbsa)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
