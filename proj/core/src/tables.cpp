#include "icm/tables.hpp"

#include <cmath>

#include "icm/equilibrium.hpp"

namespace icm {

Table1Spec table1_defaults() {
  Table1Spec spec;
  spec.vol = {0.05, -0.7, -0.3, 1.0};
  spec.investor.tau = 0.5;
  spec.investor.beta_Y = 0.2;
  spec.investor.kappa_Y = 0.0;
  spec.investor.sigma_Y = 0.3;
  spec.U = 1.0;
  spec.counts = {2, 5, 10, 100, 1000};
  spec.include_limit = true;
  return spec;
}

double mpr_gap(const AggregateParams& agg, double U, RiccatiMethod* method) {
  const auto sols = solve_equilibrium(agg, U);
  if (method) {
    *method = sols.incomplete.method() == RiccatiMethod::Integrated ||
                      sols.complete.method() == RiccatiMethod::Integrated
                  ? RiccatiMethod::Integrated
                  : RiccatiMethod::ClosedForm;
  }
  return discrete_mpr(sols.incomplete, agg, 0.0, U) -
         discrete_mpr(sols.complete, agg, 0.0, U);
}

namespace {

Table1Row make_row(const AggregateParams& agg, double U, std::size_t count,
                   bool limit) {
  Table1Row row;
  row.investors = count;
  row.limit = limit;
  row.rate_gap = rate_gap(agg, agg.vol.v0);
  row.mpr_gap = mpr_gap(agg, U, &row.method);
  row.mpr_gap_value = row.mpr_gap * std::sqrt(agg.vol.v0);
  return row;
}

}  // namespace

std::vector<Table1Row> table1(const Table1Spec& spec) {
  std::vector<Table1Row> rows;
  for (std::size_t count : spec.counts) {
    const auto econ = replicate(spec.vol, spec.investor, count, spec.U);
    rows.push_back(make_row(derive_aggregates(econ), spec.U, count, false));
  }
  if (spec.include_limit) {
    TwoGroupLimit limit;
    limit.w = 1.0;
    limit.groupA = {spec.investor.tau, spec.investor.beta_Y,
                    spec.investor.sigma_Y, spec.investor.kappa_Y,
                    spec.investor.mu_Y};
    limit.groupB = limit.groupA;
    rows.push_back(make_row(limit_aggregates(limit, spec.vol), spec.U, 0, true));
  }
  return rows;
}

Table2Spec table2_defaults() {
  const auto t1 = table1_defaults();
  Table2Spec spec;
  spec.vol = t1.vol;
  spec.base.sigma_Y = t1.investor.sigma_Y;
  spec.base.kappa_Y = t1.investor.kappa_Y;
  spec.base.mu_Y = t1.investor.mu_Y;
  spec.U = t1.U;
  spec.weights = {1.0, 0.75, 0.5, 0.25, 0.0};
  spec.taus = {{1.0 / 2, 1.0 / 2},
               {1.0 / 2, 1.0 / 3},
               {1.0 / 3, 1.0 / 2},
               {1.0 / 3, 1.0 / 3}};
  return spec;
}

Table2 table2(const Table2Spec& spec) {
  Table2 table;
  table.rows = spec.weights.size();
  table.cols = spec.taus.size();
  table.cells.reserve(table.rows * table.cols);
  for (double w : spec.weights) {
    for (const auto& [tau_A, tau_B] : spec.taus) {
      TwoGroupLimit limit;
      limit.w = w;
      limit.groupA = spec.base;
      limit.groupA.tau = tau_A;
      limit.groupA.beta_Y = spec.beta_A;
      limit.groupB = spec.base;
      limit.groupB.tau = tau_B;
      limit.groupB.beta_Y = spec.beta_B;
      const auto agg = limit_aggregates(limit, spec.vol);

      Table2Cell cell;
      cell.w = w;
      cell.tau_A = tau_A;
      cell.tau_B = tau_B;
      cell.q = agg.q;
      cell.mpr_gap = mpr_gap(agg, spec.U, &cell.method);
      cell.mpr_gap_value = cell.mpr_gap * std::sqrt(spec.vol.v0);
      table.cells.push_back(cell);
    }
  }
  return table;
}

}  // namespace icm
