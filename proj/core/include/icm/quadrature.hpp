#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace icm {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes and weights for an n-point rule (Newton iteration on P_n).
GaussLegendreRule gauss_legendre(std::size_t n);

/// Composite Gauss-Legendre: `panels` equal panels of `order` nodes each.
class CompositeGaussLegendre {
 public:
  static constexpr std::size_t kOrder = 8;

  /// Panel count chosen so that roughly `nodes_per_unit` nodes fall in each
  /// unit of the interval length (at least one panel).
  static std::size_t panels_for(double length, double nodes_per_unit);

  CompositeGaussLegendre(double lo, double hi, std::size_t panels,
                         std::size_t order = kOrder);

  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
      sum += weights_[k] * f(nodes_[k]);
    }
    return sum;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Integral of f over [lo, hi] with `nodes_per_unit` nodes per unit length.
template <class F>
double integrate(F&& f, double lo, double hi, double nodes_per_unit = 64.0) {
  if (hi <= lo) return 0.0;
  const CompositeGaussLegendre rule(
      lo, hi, CompositeGaussLegendre::panels_for(hi - lo, nodes_per_unit));
  return rule.integrate(f);
}

}  // namespace icm
