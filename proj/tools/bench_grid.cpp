// Microbenchmarks for the grid-sweep kernels: the serial reference loop
// against the OpenMP path at several grid sizes, plus the sequential
// update at different stream positions (its cost must not grow with n).

#include <benchmark/benchmark.h>

#include "seqsmooth/density.hpp"
#include "seqsmooth/locpoly.hpp"
#include "seqsmooth/rng.hpp"

using namespace seqsmooth;

namespace {

std::vector<double> sample_points(int n) {
  Rng rng(42);
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (double& x : xs) x = rng.uniform01();
  return xs;
}

void bm_kde_update(benchmark::State& state, ExecPolicy exec) {
  const int grid_points = static_cast<int>(state.range(0));
  const EvaluationGrid grid(0.0, 1.0, grid_points);
  const auto xs = sample_points(4096);
  SequentialKde kde(grid, gaussian_kernel(), BandwidthSchedule(0.4, 0.2),
                    exec);
  std::size_t i = 0;
  for (auto _ : state) {
    kde.observe(xs[i++ & 4095]);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * grid_points);
}

void bm_locpoly_update(benchmark::State& state, ExecPolicy exec) {
  const int grid_points = static_cast<int>(state.range(0));
  const EvaluationGrid grid(0.0, 1.0, grid_points);
  const auto xs = sample_points(4096);
  auto est = SequentialLocPoly::with_auto_schedule(grid, gaussian_kernel(),
                                                   0.5, 2, 1e-9, exec);
  std::size_t i = 0;
  for (auto _ : state) {
    est.observe(xs[i & 4095], xs[(i + 7) & 4095]);
    ++i;
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * grid_points);
}

// Sequential update cost as the stream grows: pre-feeds `range(0)`
// points, then measures further updates. With a compact kernel the
// affected window shrinks, so later updates must not be slower.
void bm_locpoly_update_at_n(benchmark::State& state) {
  const long lead_in = state.range(0);
  const EvaluationGrid grid(0.0, 1.0, 201);
  const auto xs = sample_points(4096);
  auto est = SequentialLocPoly::with_auto_schedule(grid, epanechnikov_kernel(),
                                                   1.0, 2);
  for (long i = 0; i < lead_in; ++i)
    est.observe(xs[static_cast<std::size_t>(i & 4095)],
                xs[static_cast<std::size_t>((i + 3) & 4095)]);
  std::size_t i = 0;
  for (auto _ : state) {
    est.observe(xs[i & 4095], xs[(i + 7) & 4095]);
    ++i;
    benchmark::ClobberMemory();
  }
}

}  // namespace

BENCHMARK_CAPTURE(bm_kde_update, serial, ExecPolicy::Serial)
    ->Arg(201)
    ->Arg(2001)
    ->Arg(20001);
BENCHMARK_CAPTURE(bm_kde_update, openmp, ExecPolicy::OpenMP)
    ->Arg(201)
    ->Arg(2001)
    ->Arg(20001);
BENCHMARK_CAPTURE(bm_locpoly_update, serial, ExecPolicy::Serial)
    ->Arg(201)
    ->Arg(2001)
    ->Arg(20001);
BENCHMARK_CAPTURE(bm_locpoly_update, openmp, ExecPolicy::OpenMP)
    ->Arg(201)
    ->Arg(2001)
    ->Arg(20001);
BENCHMARK(bm_locpoly_update_at_n)->Arg(100)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
