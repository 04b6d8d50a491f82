#include <benchmark/benchmark.h>

#include "sparsepow/certificate.hpp"
#include "sparsepow/driver.hpp"
#include "sparsepow/lattice.hpp"
#include "sparsepow/series.hpp"
#include "sparsepow/spectral_power.hpp"

using namespace sparsepow;

namespace {

const LatticeModelParams kUnit{1.0, 1.0};

void BM_TruncateAndPower(benchmark::State& state) {
  const auto spec = lattice_spec(kUnit);
  const Index P = state.range(0);
  const Window window(P, P);
  for (auto _ : state) {
    const auto m = truncate(spec, window, periodic_boundary(window, kUnit));
    benchmark::DoNotOptimize(finite_power(m, -0.5).at(0, 0));
  }
  state.SetComplexityN(window.dimension());
}
BENCHMARK(BM_TruncateAndPower)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oNCubed);

void BM_IntegerPowerElement(benchmark::State& state) {
  const auto spec = lattice_spec(kUnit);
  const Index j = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integer_power_element(spec, spec.envelope().w(), j, 0, 1));
  }
}
BENCHMARK(BM_IntegerPowerElement)->RangeMultiplier(4)->Range(4, 256);

void BM_TruncationDepth(benchmark::State& state) {
  const auto spec = lattice_spec(kUnit);
  const Window window(state.range(0), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(truncation_depth(spec, window, 0, 1).j_pq);
}
BENCHMARK(BM_TruncationDepth)->RangeMultiplier(8)->Range(8, 512);

void BM_TailBound(benchmark::State& state) {
  const Index j = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(tail_bound(-0.5, 1.0, 5.0, j));
}
BENCHMARK(BM_TailBound)->Arg(4)->Arg(64)->Arg(1024);

void BM_CirculantPowerElement(benchmark::State& state) {
  const Index P = state.range(0);
  const Window window(P, P);
  for (auto _ : state) benchmark::DoNotOptimize(circulant_power_element(window, kUnit, -0.5, 0, 3));
}
BENCHMARK(BM_CirculantPowerElement)->RangeMultiplier(4)->Range(16, 1024);

void BM_ApproximateElement(benchmark::State& state) {
  const auto spec = lattice_spec(kUnit);
  const BoundaryPolicy policy = [](const Window& w) { return periodic_boundary(w, kUnit); };
  for (auto _ : state) benchmark::DoNotOptimize(approximate_element(spec, policy, -0.5, 0, 0, 1e-6).value);
}
BENCHMARK(BM_ApproximateElement)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
