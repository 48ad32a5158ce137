#include <benchmark/benchmark.h>

#include "weyllab/arithmetic.hpp"
#include "weyllab/exponential_sums.hpp"
#include "weyllab/multiplier.hpp"
#include "weyllab/operator.hpp"

using namespace weyllab;

static void counts_schoolbook(benchmark::State& state) {
  const ConvolutionOptions opts{ConvolutionMethod::schoolbook};
  for (auto _ : state) benchmark::DoNotOptimize(representation_counts(3, 2, state.range(0), {}, opts));
}
BENCHMARK(counts_schoolbook)->RangeMultiplier(4)->Range(1 << 12, 1 << 18)->Unit(benchmark::kMillisecond);

static void counts_ntt(benchmark::State& state) {
  const ConvolutionOptions opts{ConvolutionMethod::ntt};
  for (auto _ : state) benchmark::DoNotOptimize(representation_counts(3, 2, state.range(0), {}, opts));
}
BENCHMARK(counts_ntt)->RangeMultiplier(4)->Range(1 << 12, 1 << 18)->Unit(benchmark::kMillisecond);

static void weyl_sum_partial(benchmark::State& state) {
  const Frequency theta = Frequency::real(0.318309886183791);
  for (auto _ : state) benchmark::DoNotOptimize(partial_weyl_sum(3, theta, 1, state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(weyl_sum_partial)->RangeMultiplier(8)->Range(1 << 10, 1 << 22);

static void complete_sums(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(classical_bound_audit(3, state.range(0)));
}
BENCHMARK(complete_sums)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void quadrature_mean_value(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mean_value_quadrature(3, 3, state.range(0)));
}
BENCHMARK(quadrature_mean_value)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void multiplier_grid(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(multiplier_magnitudes(3, 0.9, state.range(0), 1024));
}
BENCHMARK(multiplier_grid)->Arg(1 << 12)->Arg(1 << 14)->Unit(benchmark::kMillisecond);

static void operator_apply(benchmark::State& state) {
  SignalVector f{0, std::vector<Complex>(state.range(0), Complex(1.0, 0.0))};
  for (auto _ : state) benchmark::DoNotOptimize(apply_operator(2, 0.7, f, 64));
}
BENCHMARK(operator_apply)->Arg(1 << 10)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
