#pragma once

// Incompleteness effects reported as tables: the homogeneous economy as the
// number of investors grows, and the two-group limiting economy.

#include <cstddef>
#include <utility>
#include <vector>

#include "icm/model.hpp"
#include "icm/riccati.hpp"

namespace icm {

struct Table1Spec {
  VolParams vol;
  InvestorParams investor;  // template copied to every investor
  double U = 1.0;
  std::vector<std::size_t> counts;
  bool include_limit = true;
};

/// Volatility and investor parameters of the reference homogeneous economy,
/// with counts {2, 5, 10, 100, 1000} and the limit row.
Table1Spec table1_defaults();

struct Table1Row {
  std::size_t investors = 0;  // 0 for the limit row
  bool limit = false;
  double rate_gap = 0.0;       // r_rep - r at v0
  double mpr_gap = 0.0;        // mu_S^dis(0) - mu_S^dis,rep(0), coefficient
  double mpr_gap_value = 0.0;  // same gap times sqrt(v0)
  RiccatiMethod method = RiccatiMethod::ClosedForm;
};

std::vector<Table1Row> table1(const Table1Spec& spec);

struct Table2Spec {
  VolParams vol;
  GroupParams base;  // sigma_Y, kappa_Y, mu_Y shared by both groups
  double beta_A = 0.1;
  double beta_B = 0.4;
  double U = 1.0;
  std::vector<double> weights;
  std::vector<std::pair<double, double>> taus;  // (tau_A, tau_B) columns
};

/// Weights {1, .75, .5, .25, 0} and columns (1/2,1/2), (1/2,1/3), (1/3,1/2),
/// (1/3,1/3).
Table2Spec table2_defaults();

struct Table2Cell {
  double w = 0.0;
  double tau_A = 0.0;
  double tau_B = 0.0;
  double mpr_gap = 0.0;
  double mpr_gap_value = 0.0;
  double q = 0.0;  // incomplete-market discriminant
  RiccatiMethod method = RiccatiMethod::ClosedForm;
};

struct Table2 {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Table2Cell> cells;  // row-major

  const Table2Cell& at(std::size_t r, std::size_t c) const {
    return cells.at(r * cols + c);
  }
};

Table2 table2(const Table2Spec& spec);

/// mu_S^dis(0) - mu_S^dis,rep(0) over [0, U]. Uses the closed form when the
/// discriminant is positive and the integrator otherwise; throws
/// RiccatiBlowUp if either solution explodes before U.
double mpr_gap(const AggregateParams& agg, double U,
               RiccatiMethod* method = nullptr);

}  // namespace icm
