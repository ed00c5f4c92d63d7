#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "icm/quadrature.hpp"

namespace {

TEST(GaussLegendre, WeightsSumToTwo) {
  for (std::size_t n : {1u, 2u, 5u, 8u, 16u}) {
    const auto r = icm::gauss_legendre(n);
    ASSERT_EQ(r.nodes.size(), n);
    EXPECT_NEAR(std::accumulate(r.weights.begin(), r.weights.end(), 0.0), 2.0,
                1e-14);
  }
}

TEST(GaussLegendre, ExactForPolynomials) {
  const std::size_t n = 6;
  const auto r = icm::gauss_legendre(n);
  for (int deg = 0; deg <= 2 * static_cast<int>(n) - 1; ++deg) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      sum += r.weights[k] * std::pow(r.nodes[k], deg);
    }
    const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
    EXPECT_NEAR(sum, exact, 1e-14) << deg;
  }
}

TEST(GaussLegendre, TwoPointNodes) {
  const auto r = icm::gauss_legendre(2);
  EXPECT_NEAR(std::abs(r.nodes[0]), 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r.weights[0], 1.0, 1e-15);
}

TEST(Composite, SmoothIntegrands) {
  EXPECT_NEAR(icm::integrate([](double x) { return std::exp(x); }, 0.0, 1.0),
              std::expm1(1.0), 1e-14);
  EXPECT_NEAR(icm::integrate([](double x) { return std::sin(x); }, 0.0, M_PI,
                             8.0),
              2.0, 1e-13);
}

TEST(Composite, EmptyInterval) {
  EXPECT_EQ(icm::integrate([](double) { return 1.0; }, 1.0, 1.0), 0.0);
  EXPECT_EQ(icm::integrate([](double) { return 1.0; }, 2.0, 1.0), 0.0);
}

TEST(Composite, PanelCount) {
  EXPECT_EQ(icm::CompositeGaussLegendre::panels_for(1e-6, 64.0), 1u);
  EXPECT_EQ(icm::CompositeGaussLegendre::panels_for(1.0, 64.0), 8u);
  const icm::CompositeGaussLegendre rule(0.0, 2.0, 3);
  EXPECT_EQ(rule.nodes().size(), 3 * icm::CompositeGaussLegendre::kOrder);
  for (double x : rule.nodes()) {
    EXPECT_GT(x, 0.0);
    EXPECT_LT(x, 2.0);
  }
}

}  // namespace
