#include <benchmark/benchmark.h>

#include "heatflow/chronograph.hpp"
#include "heatflow/generators.hpp"

namespace {

using namespace heatflow;

const Dataset& toy() {
  static const Dataset d({{-0.8}, {0.0}, {0.2}, {0.5}, {0.6}});
  return d;
}

const Dataset& circles() {
  static const Dataset d = generate("circles2d", 1).dataset;
  return d;
}

void BM_Smi(benchmark::State& state) {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(state.range(0)), 17);
  const std::size_t total = 17 * sizes.size();
  for (auto _ : state) {
    benchmark::DoNotOptimize(smi(sizes, total));
  }
}
BENCHMARK(BM_Smi)->Arg(8)->Arg(128);

void BM_EvalField1D(benchmark::State& state) {
  const Kernel kernel(KernelFamily::gaussian);
  const GeneratedDataset gen = generate("noisy1d", 1);
  const SamplingGrid grid = SamplingGrid::cover(gen.dataset, kernel, 0.4,
                                                static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_field(gen.dataset, kernel, 0.2, grid));
  }
}
BENCHMARK(BM_EvalField1D)->Arg(256)->Arg(1024);

void BM_EvalField2D(benchmark::State& state) {
  const Kernel kernel(KernelFamily::gaussian);
  const SamplingGrid grid = SamplingGrid::cover(circles(), kernel, 0.45, 128);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_field(circles(), kernel, 0.25, grid));
  }
}
BENCHMARK(BM_EvalField2D);

void BM_PathCost(benchmark::State& state) {
  const Kernel kernel(KernelFamily::gaussian);
  const SamplingGrid grid = SamplingGrid::cover(circles(), kernel, 0.45, 128);
  const PotentialField field = eval_field(circles(), kernel, 0.3, grid);
  const PotentialFn fn = interpolated_potential(field);
  const Vec x{-0.884, 0.884};
  const Vec m{0.0, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(path_cost(fn, x, m, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_PathCost)->Arg(256)->Arg(1024);

void BM_ToyFlow(benchmark::State& state) {
  const Kernel kernel(KernelFamily::gaussian);
  const SamplingGrid grid = SamplingGrid::cover(toy(), kernel, 0.4, 1024);
  const TimeGrid times = TimeGrid::uniform(0.01, 0.4, 51);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_flow(toy(), kernel, times, grid, 256));
  }
}
BENCHMARK(BM_ToyFlow);

void BM_Chronodendrogram(benchmark::State& state) {
  const Kernel kernel(KernelFamily::gaussian);
  const GeneratedDataset gen = generate("noisy1d", 1);
  const SamplingGrid grid = SamplingGrid::cover(gen.dataset, kernel, 0.5, 512);
  const FlowResult flow =
      run_flow(gen.dataset, kernel, TimeGrid::uniform(0.02, 0.5, 25), grid, 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_chronodendrogram(flow));
  }
}
BENCHMARK(BM_Chronodendrogram);

}  // namespace

BENCHMARK_MAIN();
