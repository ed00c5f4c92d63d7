#pragma once

// The affine bond exponents (a, b) solve
//   b'(s) = B0 + B1 b(s) + B2 b(s)^2,   b(0) = 0,
//   a'(s) = mu_over_tau - mu_v b(s),    a(0) = 0,
// so that B(t, U) = exp(b(U - t) v_t - a(U - t)).
//
// Two solvers are provided: the closed form (production path) and a
// fixed-step RK4 integrator with Hermite dense output (the oracle, and the
// fallback when the discriminant is not positive).

#include <stdexcept>
#include <vector>

#include "icm/model.hpp"

namespace icm {

struct RiccatiCoeffs {
  double B0 = 0.0;
  double B1 = 0.0;
  double B2 = 0.0;  // sigma_v^2 / 2
  double mu_over_tau = 0.0;
  double mu_v = 0.0;
  double sigma_v = 0.0;

  double discriminant() const noexcept { return B1 * B1 - 4.0 * B2 * B0; }
  double rhs_b(double b) const noexcept { return B0 + b * (B1 + B2 * b); }
  double rhs_a(double b) const noexcept { return mu_over_tau - mu_v * b; }
};

RiccatiCoeffs incomplete_coeffs(const AggregateParams& agg);

/// Complete-market analogue: B0 carries (1 / (2 tau_sigma)) sum beta_i^2 in
/// place of (1/2) sum beta_i^2 / tau_i.
RiccatiCoeffs rep_coeffs(const AggregateParams& agg);

enum class RiccatiMethod { ClosedForm, Integrated };

/// Thrown when b leaves every bounded set before the requested horizon.
class RiccatiBlowUp : public std::runtime_error {
 public:
  RiccatiBlowUp(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class RiccatiSolution {
 public:
  double b(double s) const;
  double a(double s) const;
  double b_prime(double s) const { return coeffs_.rhs_b(b(s)); }

  double horizon() const noexcept { return horizon_; }
  RiccatiMethod method() const noexcept { return method_; }
  const RiccatiCoeffs& coeffs() const noexcept { return coeffs_; }

 private:
  friend RiccatiSolution solve_closed_form(const RiccatiCoeffs&, double);
  friend RiccatiSolution solve_numerical(const RiccatiCoeffs&, double, double,
                                         double);

  RiccatiSolution(const RiccatiCoeffs& c, double horizon, RiccatiMethod m)
      : coeffs_(c), horizon_(horizon), method_(m) {}

  void check_range(double s) const;
  std::size_t segment(double s, double& theta) const;

  RiccatiCoeffs coeffs_;
  double horizon_;
  RiccatiMethod method_;

  double gamma_ = 0.0;  // sqrt(discriminant)

  double step_ = 0.0;
  std::vector<double> b_grid_;
  std::vector<double> a_grid_;
};

/// Closed form with discriminant sqrt(q); requires q > 0 and no blow-up on
/// [0, T]. Throws std::invalid_argument for q <= 0 and RiccatiBlowUp when the
/// normal solution explodes before T.
RiccatiSolution solve_closed_form(const RiccatiCoeffs& coeffs, double T);

/// Classical RK4 with fixed step (adjusted down so that the grid ends at T)
/// and cubic Hermite interpolation between nodes. Throws RiccatiBlowUp when
/// |b| exceeds `blowup_bound`, reporting the first time it did.
RiccatiSolution solve_numerical(const RiccatiCoeffs& coeffs, double T,
                                double step = 1e-4,
                                double blowup_bound = 1e6);

/// Closed form when q > 0, otherwise the integrator.
RiccatiSolution solve(const RiccatiCoeffs& coeffs, double T);

}  // namespace icm
