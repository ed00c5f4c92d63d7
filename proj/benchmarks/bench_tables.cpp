#include <benchmark/benchmark.h>

#include "icm/tables.hpp"

namespace {

void BM_Table1(benchmark::State& state) {
  const auto spec = icm::table1_defaults();
  for (auto _ : state) benchmark::DoNotOptimize(icm::table1(spec));
}
BENCHMARK(BM_Table1);

void BM_Table2(benchmark::State& state) {
  const auto spec = icm::table2_defaults();
  for (auto _ : state) benchmark::DoNotOptimize(icm::table2(spec));
}
BENCHMARK(BM_Table2);

}  // namespace
BENCHMARK_MAIN();
