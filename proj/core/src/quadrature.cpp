#include "icm/quadrature.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace icm {

GaussLegendreRule gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi's initial guess for the i-th root.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (dn + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double dk = static_cast<double>(k);
        const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
        p0 = p1;
        p1 = p2;
      }
      dp = dn * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double dk = static_cast<double>(k);
      const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
      p0 = p1;
      p1 = p2;
    }
    dp = dn * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

std::size_t CompositeGaussLegendre::panels_for(double length,
                                               double nodes_per_unit) {
  const double nodes = std::ceil(length * nodes_per_unit);
  const double panels = std::ceil(nodes / static_cast<double>(kOrder));
  return std::max<std::size_t>(1, static_cast<std::size_t>(panels));
}

CompositeGaussLegendre::CompositeGaussLegendre(double lo, double hi,
                                               std::size_t panels,
                                               std::size_t order) {
  if (panels == 0) throw std::invalid_argument("panels must be >= 1");
  const GaussLegendreRule base = gauss_legendre(order);
  nodes_.reserve(panels * order);
  weights_.reserve(panels * order);
  const double h = (hi - lo) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = lo + h * static_cast<double>(p);
    const double mid = a + 0.5 * h;
    for (std::size_t k = 0; k < order; ++k) {
      nodes_.push_back(mid + 0.5 * h * base.nodes[k]);
      weights_.push_back(0.5 * h * base.weights[k]);
    }
  }
}

}  // namespace icm
