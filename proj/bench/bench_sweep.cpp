// Serial reference vs OpenMP sweep over the 17-point Makarov ensemble.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "momentous/config.hpp"
#include "momentous/report.hpp"

using namespace momentous;

namespace {

SweepSpec makarov_sweep(double t_end) {
  auto cfg = merge_config(default_config(), report_preset(ReportKind::makarov_metrics));
  cfg = merge_config(cfg, {{"t_end", t_end}});
  return *cfg.sweep();
}

void BM_SweepSerial(benchmark::State& state) {
  const auto spec = makarov_sweep(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep_serial(spec));
  state.counters["points"] = 17;
}

void BM_SweepOpenMP(benchmark::State& state) {
  auto spec = makarov_sweep(static_cast<double>(state.range(0)));
  spec.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec));
  state.counters["threads"] = static_cast<double>(spec.threads);
}

void thread_args(benchmark::internal::Benchmark* b) {
  const int max = omp_get_max_threads();
  for (int t = 1; t <= max; t *= 2) b->Args({10, t});
  if ((max & (max - 1)) != 0) b->Args({10, max});
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepOpenMP)->Apply(thread_args)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
