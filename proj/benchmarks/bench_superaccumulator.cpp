#include <benchmark/benchmark.h>

#include <vector>

#include "sawq/mixing.hpp"
#include "sawq/superaccumulator.hpp"

namespace {

std::vector<double> make_values(size_t n) {
  sawq::SplitMix64 rng(99);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.unit() - 0.5;
  return v;
}

void BM_plain_double_sum(benchmark::State& state) {
  const auto xs = make_values(1 << 14);
  for (auto _ : state) {
    double s = 0.0;
    for (double x : xs) s += x;
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(xs.size()));
}
BENCHMARK(BM_plain_double_sum);

void BM_superaccumulator_add(benchmark::State& state) {
  const auto xs = make_values(1 << 14);
  for (auto _ : state) {
    sawq::Superaccumulator acc;
    for (double x : xs) acc.add(x);
    benchmark::DoNotOptimize(acc.to_double());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(xs.size()));
}
BENCHMARK(BM_superaccumulator_add);

void BM_superaccumulator_add_exp(benchmark::State& state) {
  sawq::SplitMix64 rng(3);
  std::vector<double> logs(1 << 14);
  for (auto& x : logs) x = -50.0 * rng.unit();
  for (auto _ : state) {
    sawq::Superaccumulator acc;
    for (double l : logs) acc.add_exp(l);
    benchmark::DoNotOptimize(acc.to_double());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(logs.size()));
}
BENCHMARK(BM_superaccumulator_add_exp);

void BM_superaccumulator_merge(benchmark::State& state) {
  const auto xs = make_values(1 << 10);
  sawq::Superaccumulator part;
  for (double x : xs) part.add(x);
  for (auto _ : state) {
    sawq::Superaccumulator total;
    for (int i = 0; i < 64; ++i) total.merge(part);
    benchmark::DoNotOptimize(total.to_double());
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_superaccumulator_merge);

}  // namespace
