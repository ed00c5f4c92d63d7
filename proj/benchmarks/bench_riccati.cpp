#include <benchmark/benchmark.h>

#include "icm/model.hpp"
#include "icm/riccati.hpp"
#include "icm/tables.hpp"

namespace {

icm::AggregateParams reference() {
  icm::Table2Spec spec = icm::table2_defaults();
  icm::EconomyParams e;
  e.vol = spec.vol;
  e.horizon_T = 1.0;
  icm::InvestorParams inv;
  inv.tau = 0.5;
  inv.sigma_Y = 0.3;
  inv.beta_Y = 0.2;
  e.investors = {inv, inv};
  return icm::derive_aggregates(e);
}

void BM_ClosedForm(benchmark::State& state) {
  const auto c = icm::incomplete_coeffs(reference());
  for (auto _ : state) {
    const auto sol = icm::solve_closed_form(c, 1.0);
    benchmark::DoNotOptimize(sol.b(0.5));
  }
}
BENCHMARK(BM_ClosedForm);

void BM_Rk4(benchmark::State& state) {
  const auto c = icm::incomplete_coeffs(reference());
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    const auto sol = icm::solve_numerical(c, 1.0, h);
    benchmark::DoNotOptimize(sol.b(0.5));
  }
}
BENCHMARK(BM_Rk4)->Arg(1000)->Arg(10000);

}  // namespace
