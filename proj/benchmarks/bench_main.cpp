#include <benchmark/benchmark.h>

#include "gausstomo/estimation.hpp"
#include "gausstomo/fisher.hpp"
#include "gausstomo/sampling.hpp"

using namespace gausstomo;

namespace {

const GaussianStateSpec kSpec{2, 10, 0.3, 0.5};

void BM_FisherHomQuadrature(benchmark::State& state) {
  const int nodes = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fisher_hom_quadrature(kSpec, nodes).inverse_trace());
}
BENCHMARK(BM_FisherHomQuadrature)->Arg(64)->Arg(256)->Arg(1024);

void BM_FisherHomClosed(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fisher_hom_closed(kSpec).inverse_trace());
}
BENCHMARK(BM_FisherHomClosed);

void BM_SampleHomodyne(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_homodyne(kSpec, n, {}, {1, 0}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleHomodyne)->Arg(1 << 10)->Arg(1 << 16);

void BM_SampleHeterodyne(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_heterodyne(kSpec, n, {1, 0}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleHeterodyne)->Arg(1 << 10)->Arg(1 << 16);

void BM_EstimateHomodyneMl(benchmark::State& state) {
  const auto data = sample_homodyne(kSpec, static_cast<std::size_t>(state.range(0)), {}, {2, 0});
  for (auto _ : state) benchmark::DoNotOptimize(estimate_homodyne_ml(data, kSpec.eta));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateHomodyneMl)->Arg(100)->Arg(10000);

void BM_EstimateHeterodyne(benchmark::State& state) {
  const auto data = sample_heterodyne(kSpec, static_cast<std::size_t>(state.range(0)), {3, 0});
  for (auto _ : state) benchmark::DoNotOptimize(estimate_heterodyne(data, kSpec.eta));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateHeterodyne)->Arg(100)->Arg(10000);

}  // namespace
BENCHMARK_MAIN();
