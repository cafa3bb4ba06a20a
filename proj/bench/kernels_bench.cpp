// Serial vs OpenMP kernels: dense oracle blocks and independent trials.

#include <benchmark/benchmark.h>

#include "ripm/bench.hpp"
#include "ripm/dense_oracle.hpp"
#include "ripm/diagnostics.hpp"
#include "ripm/parallel.hpp"

namespace {

using namespace ripm;

void BM_DenseBlocks(benchmark::State& state) {
  const auto exec = state.range(0) == 0 ? Execution::serial : Execution::parallel;
  const auto problems = benchmark_problems(1);
  const Problem& p = *problems[static_cast<std::size_t>(state.range(1))].instance.problem;
  Rng rng(2);
  const KktSystem sys(p, random_interior_iterate(p, rng));
  const auto basis = orthonormal_basis(p.manifold(), sys.iterate().x, rng);
  for (auto _ : state) benchmark::DoNotOptimize(dense_blocks(sys, basis, exec));
  state.SetLabel(problems[static_cast<std::size_t>(state.range(1))].name);
}
BENCHMARK(BM_DenseBlocks)->ArgsProduct({{0, 1}, {0, 1, 2}})->Unit(benchmark::kMillisecond);

void BM_Trials(benchmark::State& state) {
  InstanceSpec spec;
  spec.dims = {20, 16, 2};
  spec.noise = 0.001;
  spec.tol_kkt = 1e-8;
  std::vector<int> iters(8);
  const auto job = [&](Index t) {
    iters[static_cast<std::size_t>(t)] = run_trial(spec, static_cast<int>(t)).outer_iters;
  };
  for (auto _ : state) {
    if (state.range(0) == 0) {
      kernels::for_each_index_serial(8, job);
    } else {
      kernels::for_each_index_parallel(8, 0, job);
    }
    benchmark::DoNotOptimize(iters.data());
  }
}
BENCHMARK(BM_Trials)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
