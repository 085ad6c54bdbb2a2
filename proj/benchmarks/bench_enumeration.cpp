#include <benchmark/benchmark.h>

#include "sawq/enumeration.hpp"

namespace {

void BM_count_walks_d2(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  uint64_t visits = 0;
  for (auto _ : state) {
    auto c = sawq::count_walks(2, n_max);
    visits = 0;
    for (int n = 1; n <= n_max; ++n) visits += c[n];
    benchmark::DoNotOptimize(c[n_max]);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(visits));
}
BENCHMARK(BM_count_walks_d2)->Arg(8)->Arg(10)->Arg(12);

void BM_count_walks_d3(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  uint64_t visits = 0;
  for (auto _ : state) {
    auto c = sawq::count_walks(3, n_max);
    visits = 0;
    for (int n = 1; n <= n_max; ++n) visits += c[n];
    benchmark::DoNotOptimize(c[n_max]);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(visits));
}
BENCHMARK(BM_count_walks_d3)->Arg(6)->Arg(8);

void BM_count_walks_split(benchmark::State& state) {
  const int split = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto c = sawq::count_walks(2, 12, split, 0);
    benchmark::DoNotOptimize(c[12]);
  }
}
BENCHMARK(BM_count_walks_split)->Arg(0)->Arg(1)->Arg(2)->Arg(3);

}  // namespace
