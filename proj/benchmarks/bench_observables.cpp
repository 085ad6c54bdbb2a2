#include <benchmark/benchmark.h>

#include "sawq/observables.hpp"

namespace {

void BM_quenched_counts_d2(benchmark::State& state) {
  const double beta = static_cast<double>(state.range(0)) / 10.0;
  sawq::Environment env(sawq::DistributionSpec::gaussian(0.0, 1.0), 1, 2);
  sawq::EnumerationConfig cfg;
  cfg.dimension = 2;
  cfg.n_max = 10;
  for (auto _ : state) {
    auto q = sawq::quenched_counts(env, beta, sawq::Point::origin(2), cfg);
    benchmark::DoNotOptimize(q.counts[10]);
  }
}
BENCHMARK(BM_quenched_counts_d2)->Arg(0)->Arg(5)->Arg(10);

void BM_two_point_field_d2(benchmark::State& state) {
  sawq::Environment env(sawq::DistributionSpec::gaussian(0.0, 1.0), 1, 2);
  sawq::EnumerationConfig cfg;
  cfg.dimension = 2;
  cfg.n_max = 8;
  for (auto _ : state) {
    auto f = sawq::two_point_field(env, 1.2, 0.5, sawq::Point::origin(2), cfg);
    benchmark::DoNotOptimize(f.total);
  }
}
BENCHMARK(BM_two_point_field_d2);

}  // namespace
