#include <gtest/gtest.h>

#include <cmath>

#include "icm/tables.hpp"
#include "oracle_values.hpp"

namespace {

TEST(InvestorTable, MatchesOracle) {
  const auto rows = icm::table1(icm::table1_defaults());
  ASSERT_EQ(rows.size(), 6u);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_NEAR(rows[k].rate_gap, oracle::kInvestorRateGap[k], 1e-12) << k;
    EXPECT_NEAR(rows[k].mpr_gap, oracle::kInvestorMprGap[k], 1e-12) << k;
    EXPECT_EQ(rows[k].mpr_gap_value, rows[k].mpr_gap);  // v0 = 1
    EXPECT_EQ(rows[k].method, icm::RiccatiMethod::ClosedForm);
  }
  EXPECT_EQ(rows.front().investors, 2u);
  EXPECT_FALSE(rows.front().limit);
  EXPECT_TRUE(rows.back().limit);
}

TEST(InvestorTable, GapsIncreaseWithInvestors) {
  const auto rows = icm::table1(icm::table1_defaults());
  for (std::size_t k = 1; k < rows.size(); ++k) {
    EXPECT_GT(rows[k].rate_gap, rows[k - 1].rate_gap);
    EXPECT_GE(rows[k].mpr_gap, rows[k - 1].mpr_gap);
  }
}

TEST(InvestorTable, CustomCounts) {
  auto spec = icm::table1_defaults();
  spec.counts = {1, 3};
  spec.include_limit = false;
  const auto rows = icm::table1(spec);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(rows[0].rate_gap, 0.0, 1e-15);
  EXPECT_NEAR(rows[0].mpr_gap, 0.0, 1e-15);
}

TEST(TwoGroupTable, MatchesOracle) {
  const auto t = icm::table2(icm::table2_defaults());
  ASSERT_EQ(t.cells.size(), 20u);
  for (std::size_t k = 0; k < t.cells.size(); ++k) {
    EXPECT_NEAR(t.cells[k].mpr_gap, oracle::kTwoGroupMprGap[k], 1e-10) << k;
  }
}

TEST(TwoGroupTable, IntegratorOnlyWhereDiscriminantFails) {
  const auto t = icm::table2(icm::table2_defaults());
  for (std::size_t r = 0; r < t.rows; ++r) {
    for (std::size_t c = 0; c < t.cols; ++c) {
      const auto& cell = t.at(r, c);
      const bool closed = cell.method == icm::RiccatiMethod::ClosedForm;
      EXPECT_EQ(closed, cell.q > 0.0) << r << "," << c;
    }
  }
  EXPECT_LE(t.at(4, 1).q, 0.0);
  EXPECT_LE(t.at(4, 3).q, 0.0);
  EXPECT_EQ(t.at(4, 1).method, icm::RiccatiMethod::Integrated);
}

TEST(TwoGroupTable, SymmetricColumnsAtPureGroups) {
  const auto t = icm::table2(icm::table2_defaults());
  // w = 1: only tau_A matters; w = 0: only tau_B.
  EXPECT_DOUBLE_EQ(t.at(0, 0).mpr_gap, t.at(0, 1).mpr_gap);
  EXPECT_DOUBLE_EQ(t.at(0, 2).mpr_gap, t.at(0, 3).mpr_gap);
  EXPECT_DOUBLE_EQ(t.at(4, 0).mpr_gap, t.at(4, 2).mpr_gap);
  EXPECT_DOUBLE_EQ(t.at(4, 1).mpr_gap, t.at(4, 3).mpr_gap);
}

TEST(MprGap, ReportsMethod) {
  icm::TwoGroupLimit lim;
  lim.w = 0.0;
  lim.groupB = {1.0 / 3.0, 0.4, 0.3, 0.0, 0.0};
  lim.groupA = lim.groupB;
  const auto spec = icm::table1_defaults();
  icm::RiccatiMethod m = icm::RiccatiMethod::ClosedForm;
  const double g = icm::mpr_gap(icm::limit_aggregates(lim, spec.vol), 1.0, &m);
  EXPECT_EQ(m, icm::RiccatiMethod::Integrated);
  EXPECT_NEAR(g, oracle::kTwoGroupMprGap[17], 1e-10);
}

}  // namespace
