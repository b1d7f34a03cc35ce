// Serial vs OpenMP density evolution on the CS-CNOT channel basis (9 levels).

#include "hqc/rydberg.hpp"

#include <benchmark/benchmark.h>

using namespace hqc;

namespace {

void run(benchmark::State& state, Execution exec) {
  const auto gate = cs_cnot(RydbergParams{}, {});
  const auto noise = rydberg_noise(2);
  const auto basis = channel_basis(9, computational_indices(2), false);
  StepControl sc;
  sc.fixed_steps = static_cast<int>(state.range(0));
  for (auto _ : state) {
    std::vector<CMatrix> states;
    for (const auto& b : basis) states.push_back(b.second);
    evolve_density(gate.schedule, noise, states, sc, {}, exec);
    benchmark::DoNotOptimize(states.front()(0, 0));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(basis.size()));
}

void BM_EvolveSerial(benchmark::State& s) { run(s, Execution::Serial); }
void BM_EvolveParallel(benchmark::State& s) { run(s, Execution::Parallel); }

}  // namespace

BENCHMARK(BM_EvolveSerial)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvolveParallel)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
