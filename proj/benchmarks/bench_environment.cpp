#include <benchmark/benchmark.h>

#include "sawq/environment.hpp"

namespace {

void bench_conductance(benchmark::State& state, const sawq::DistributionSpec& dist) {
  sawq::Environment env(dist, 1, 3);
  sawq::Coord base[3] = {0, 0, 0};
  int64_t i = 0;
  for (auto _ : state) {
    base[0] = static_cast<sawq::Coord>(i & 1023);
    base[1] = static_cast<sawq::Coord>((i >> 10) & 1023);
    benchmark::DoNotOptimize(env.conductance_at({base, 3}, static_cast<int>(i % 3)));
    ++i;
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_conductance_gaussian(benchmark::State& state) {
  bench_conductance(state, sawq::DistributionSpec::gaussian(0.0, 1.0));
}
BENCHMARK(BM_conductance_gaussian);

void BM_conductance_bernoulli(benchmark::State& state) {
  bench_conductance(state, sawq::DistributionSpec::bernoulli(0.5, 1.0));
}
BENCHMARK(BM_conductance_bernoulli);

void BM_conductance_exponential(benchmark::State& state) {
  bench_conductance(state, sawq::DistributionSpec::exponential(1.0));
}
BENCHMARK(BM_conductance_exponential);

}  // namespace
