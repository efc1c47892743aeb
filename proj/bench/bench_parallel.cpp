// Serial reference loops against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "qdcr/dcr.hpp"
#include "qdcr/qfactor.hpp"
#include "qdcr/statesum.hpp"
#include "qdcr/sweep.hpp"

#ifndef QDCR_DATA_DIR
#define QDCR_DATA_DIR "data/triangulations"
#endif

using namespace qdcr;

namespace {

DCR symmetric(std::int64_t j) { return compile_sixj(SixJLabels{{2 * j, 2 * j, 2 * j, 2 * j, 2 * j, 2 * j}}); }

void BM_CompileCold(benchmark::State& state) {
  const auto l = SixJLabels{{2 * state.range(0), 2 * state.range(0), 2 * state.range(0), 2 * state.range(0),
                             2 * state.range(0), 2 * state.range(0)}};
  for (auto _ : state) {
    clear_qfactor_caches();
    benchmark::DoNotOptimize(compile_sixj(l));
  }
}
BENCHMARK(BM_CompileCold)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

template <bool Parallel>
void BM_Sweep(benchmark::State& state) {
  const DCR d = symmetric(state.range(0));
  const SweepSpec spec{0.001, 0.999, 2000, true};
  const SweepEngine eng{static_cast<mpfr_prec_t>(state.range(1)), 17};
  for (auto _ : state) {
    auto rows = Parallel ? sweep_parallel(d, spec, eng) : sweep_serial(d, spec, eng);
    benchmark::DoNotOptimize(rows.data());
  }
  state.SetItemsProcessed(state.iterations() * spec.count);
  state.counters["threads"] = Parallel ? omp_get_max_threads() : 1;
}
BENCHMARK(BM_Sweep<false>)->Args({50, 0})->Args({50, 256})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep<true>)->Args({50, 0})->Args({50, 256})->Unit(benchmark::kMillisecond);

template <bool Parallel>
void BM_StateSum(benchmark::State& state) {
  const Triangulation tri = load_triangulation(std::string(QDCR_DATA_DIR) + "/ball_4tet.json");
  TvOptions opt;
  opt.k = state.range(0);
  opt.parallel = Parallel;
  for (auto _ : state) benchmark::DoNotOptimize(tv_partition(tri, opt));
  state.counters["threads"] = Parallel ? omp_get_max_threads() : 1;
}
BENCHMARK(BM_StateSum<false>)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StateSum<true>)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
