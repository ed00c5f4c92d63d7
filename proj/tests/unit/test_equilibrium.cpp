#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "icm/equilibrium.hpp"
#include "oracle_values.hpp"
#include "random_economy.hpp"

namespace {

using testing_support::reference_economy;

struct Reference : ::testing::Test {
  icm::AggregateParams agg = icm::derive_aggregates(reference_economy(2));
  icm::EquilibriumSolutions sols = icm::solve_equilibrium(agg, 1.0);
};

TEST_F(Reference, BondPricesMatchOracle) {
  for (std::size_t j = 0; j < 3; ++j) {
    const double U = oracle::kMaturities[j];
    EXPECT_NEAR(icm::bond_price(sols.incomplete, 0.0, U, 1.0),
                oracle::kBondPrice[j], 1e-13);
    EXPECT_NEAR(icm::bond_price(sols.complete, 0.0, U, 1.0),
                oracle::kBondPriceRep[j], 1e-13);
  }
}

TEST_F(Reference, BondPriceEdges) {
  EXPECT_EQ(icm::bond_price(sols.incomplete, 0.5, 0.5, 3.0), 1.0);
  EXPECT_THROW(icm::bond_price(sols.incomplete, 0.6, 0.5, 1.0),
               std::invalid_argument);
  EXPECT_THROW(icm::bond_price(sols.incomplete, 0.0, 0.5, -1.0),
               std::invalid_argument);
  EXPECT_NO_THROW(icm::bond_price(sols.incomplete, 0.0, 0.5, 0.0));
}

TEST_F(Reference, BondPriceDerivative) {
  const double h = 1e-6;
  const double fd = (icm::bond_price(sols.incomplete, 0.2, 0.9, 0.7 + h) -
                     icm::bond_price(sols.incomplete, 0.2, 0.9, 0.7 - h)) /
                    (2 * h);
  EXPECT_NEAR(icm::bond_price_dv(sols.incomplete, 0.2, 0.9, 0.7), fd, 1e-8);
}

TEST_F(Reference, AnnuityMatchesOracle) {
  EXPECT_NEAR(icm::annuity_price(sols.incomplete, 0.0, 1.0, 1.0),
              oracle::kAnnuity, 1e-12);
  EXPECT_EQ(icm::annuity_price(sols.incomplete, 1.0, 1.0, 1.0), 0.0);
}

TEST_F(Reference, AnnuityVolIsSensitivity) {
  const double v = 0.8, h = 1e-6;
  const double dS = (icm::annuity_price(sols.incomplete, 0.1, v + h, 1.0) -
                     icm::annuity_price(sols.incomplete, 0.1, v - h, 1.0)) /
                    (2 * h);
  EXPECT_NEAR(icm::annuity_vol(sols.incomplete, 0.1, v, 1.0),
              agg.vol.sigma_v * std::sqrt(v) * dS, 1e-8);
}

TEST_F(Reference, RatesAndGap) {
  for (double v : {0.0, 0.3, 1.0, 2.0}) {
    EXPECT_NEAR(icm::spot_rate_rep(agg, v) - icm::spot_rate(agg, v),
                icm::rate_gap(agg, v), 1e-15);
  }
  EXPECT_NEAR(icm::rate_gap(agg, 1.0), 0.04, 1e-15);
  EXPECT_EQ(icm::mpr_instantaneous(agg, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(icm::mpr_instantaneous(agg, 4.0), 1.2);
}

TEST_F(Reference, DiscreteMpr) {
  EXPECT_EQ(icm::discrete_mpr(sols.incomplete, agg, 1.0, 1.0), agg.mu_S);
  EXPECT_THROW(icm::discrete_mpr(sols.incomplete, agg, 1.1, 1.0),
               std::invalid_argument);
  const double gap = icm::discrete_mpr(sols.incomplete, agg, 0.0, 1.0) -
                     icm::discrete_mpr(sols.complete, agg, 0.0, 1.0);
  EXPECT_NEAR(gap, oracle::kInvestorMprGap[0], 1e-13);
}

TEST_F(Reference, Curves) {
  const auto ts = icm::term_structure(sols, 0.2, 1.0, icm::linspace(0.2, 1.0, 9));
  EXPECT_EQ(ts.incomplete.front(), 1.0);
  EXPECT_EQ(ts.complete.front(), 1.0);
  const auto c = icm::mpr_curve(sols, agg, 1.0, 1.0, icm::linspace(0.0, 1.0, 11));
  EXPECT_EQ(c.discrete.back(), agg.mu_S);
  EXPECT_EQ(c.discrete_rep.back(), agg.mu_S);
  EXPECT_EQ(c.instantaneous_value(3), agg.mu_S);
  for (std::size_t k = 0; k + 1 < c.times.size(); ++k) {
    EXPECT_GT(c.discrete[k], c.discrete_rep[k]);
  }
}

TEST(Consumption, CoefficientsClear) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    const auto e = testing_support::random_valid_economy(rng);
    const auto agg = icm::derive_aggregates(e);
    double c0 = 0.0, cv = 0.0, cd = 0.0;
    for (const auto& inv : e.investors) {
      const auto c = icm::optimal_consumption_coeffs(agg, inv);
      c0 += c.drift_const;
      cv += c.drift_v;
      cd += c.diffusion;
    }
    EXPECT_NEAR(c0, 0.0, 1e-12);
    EXPECT_NEAR(cv, 0.0, 1e-12);
    EXPECT_NEAR(cd, 0.0, 1e-12);
  }
}

TEST(Linspace, Endpoints) {
  const auto x = icm::linspace(0.0, 0.3, 4);
  ASSERT_EQ(x.size(), 4u);
  EXPECT_EQ(x.front(), 0.0);
  EXPECT_EQ(x.back(), 0.3);
  EXPECT_NEAR(x[1], 0.1, 1e-16);
  EXPECT_THROW(icm::linspace(0.0, 1.0, 1), std::invalid_argument);
}

}  // namespace
