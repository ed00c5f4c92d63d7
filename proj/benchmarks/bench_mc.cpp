#include <benchmark/benchmark.h>

#include "icm/tables.hpp"
#include "icm/verification.hpp"

namespace {

icm::EconomyParams reference() {
  icm::EconomyParams e;
  e.vol = icm::table2_defaults().vol;
  e.horizon_T = 1.0;
  icm::InvestorParams inv;
  inv.tau = 0.5;
  inv.sigma_Y = 0.3;
  inv.beta_Y = 0.2;
  e.investors = {inv, inv};
  return e;
}

void BM_BondPrice(benchmark::State& state) {
  icm::SimConfig sim;
  sim.n_paths = static_cast<std::size_t>(state.range(0));
  sim.threads = 1;
  const auto e = reference();
  for (auto _ : state) {
    benchmark::DoNotOptimize(icm::mc_bond_price(e, 1.0, sim).value);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BondPrice)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_BondPriceExact(benchmark::State& state) {
  icm::SimConfig sim;
  sim.n_paths = 1000;
  sim.threads = 1;
  sim.scheme = icm::Scheme::ExactCir;
  const auto e = reference();
  for (auto _ : state) {
    benchmark::DoNotOptimize(icm::mc_bond_price(e, 1.0, sim).value);
  }
}
BENCHMARK(BM_BondPriceExact)->Unit(benchmark::kMillisecond);

}  // namespace
