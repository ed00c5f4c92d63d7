#include "icm/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace icm {

RiccatiCoeffs incomplete_coeffs(const AggregateParams& agg) {
  RiccatiCoeffs c;
  c.B0 = agg.B0;
  c.B1 = agg.B1;
  c.B2 = agg.B2;
  c.mu_over_tau = agg.rate_const;
  c.mu_v = agg.vol.mu_v;
  c.sigma_v = agg.vol.sigma_v;
  return c;
}

RiccatiCoeffs rep_coeffs(const AggregateParams& agg) {
  RiccatiCoeffs c = incomplete_coeffs(agg);
  c.B0 = agg.B0_rep;
  return c;
}

void RiccatiSolution::check_range(double s) const {
  // Evaluation slightly past the horizon is tolerated for rounding in
  // callers that form U - t.
  if (!(s >= 0.0) || s > horizon_ * (1.0 + 1e-12) + 1e-14) {
    std::ostringstream os;
    os << "Riccati solution evaluated at s = " << s << " outside [0, "
       << horizon_ << "]";
    throw std::out_of_range(os.str());
  }
}

std::size_t RiccatiSolution::segment(double s, double& theta) const {
  const std::size_t last = b_grid_.size() - 1;
  const double x = s / step_;
  auto k = static_cast<std::size_t>(x);
  if (k >= last) k = last - 1;
  theta = x - static_cast<double>(k);
  return k;
}

namespace {

double hermite(double y0, double y1, double d0, double d1, double h,
               double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 +
         (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * d1;
}

}  // namespace

double RiccatiSolution::b(double s) const {
  check_range(s);
  if (method_ == RiccatiMethod::ClosedForm) {
    const double g = gamma_;
    const double one_minus_e = -std::expm1(-g * s);
    const double e = 1.0 - one_minus_e;
    const double den = (g - coeffs_.B1) * one_minus_e + 2.0 * g * e;
    return 2.0 * coeffs_.B0 * one_minus_e / den;
  }
  double theta = 0.0;
  const std::size_t k = segment(std::min(s, horizon_), theta);
  const double y0 = b_grid_[k];
  const double y1 = b_grid_[k + 1];
  return hermite(y0, y1, coeffs_.rhs_b(y0), coeffs_.rhs_b(y1), step_, theta);
}

double RiccatiSolution::a(double s) const {
  check_range(s);
  if (method_ == RiccatiMethod::ClosedForm) {
    const double g = gamma_;
    const double B1 = coeffs_.B1;
    const double one_minus_e = -std::expm1(-g * s);
    // Integral of b from 0 to s via b = -w' / (B2 w).
    const double log_w =
        0.5 * (B1 + g) * s + std::log1p(-one_minus_e * (g + B1) / (2.0 * g));
    const double int_b = coeffs_.B2 > 0.0 ? -log_w / coeffs_.B2 : 0.0;
    return coeffs_.mu_over_tau * s - coeffs_.mu_v * int_b;
  }
  double theta = 0.0;
  const std::size_t k = segment(std::min(s, horizon_), theta);
  return hermite(a_grid_[k], a_grid_[k + 1], coeffs_.rhs_a(b_grid_[k]),
                 coeffs_.rhs_a(b_grid_[k + 1]), step_, theta);
}

RiccatiSolution solve_closed_form(const RiccatiCoeffs& coeffs, double T) {
  if (!(T >= 0.0)) throw std::invalid_argument("horizon must be >= 0");
  if (!(coeffs.B2 > 0.0)) {
    throw std::invalid_argument("closed form requires B2 = sigma_v^2/2 > 0");
  }
  const double q = coeffs.discriminant();
  if (!(q > 0.0)) {
    throw std::invalid_argument(
        "closed form requires a positive discriminant, got q = " +
        std::to_string(q));
  }
  const double blowup = riccati_blowup_time(coeffs.B0, coeffs.B1, coeffs.B2);
  if (blowup <= T) {
    throw RiccatiBlowUp("Riccati solution explodes at s = " +
                            std::to_string(blowup) + " <= T",
                        blowup);
  }
  RiccatiSolution sol(coeffs, T, RiccatiMethod::ClosedForm);
  sol.gamma_ = std::sqrt(q);
  return sol;
}

RiccatiSolution solve_numerical(const RiccatiCoeffs& coeffs, double T,
                                double step, double blowup_bound) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  if (!(T >= 0.0)) throw std::invalid_argument("horizon must be >= 0");

  const auto n = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(T / step - 1e-9)));
  const double h = T > 0.0 ? T / static_cast<double>(n) : step;

  RiccatiSolution sol(coeffs, T, RiccatiMethod::Integrated);
  sol.step_ = h;
  sol.b_grid_.resize(n + 1);
  sol.a_grid_.resize(n + 1);
  double b = 0.0;
  double a = 0.0;
  sol.b_grid_[0] = 0.0;
  sol.a_grid_[0] = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double kb1 = coeffs.rhs_b(b);
    const double ka1 = coeffs.rhs_a(b);
    const double b2 = b + 0.5 * h * kb1;
    const double kb2 = coeffs.rhs_b(b2);
    const double ka2 = coeffs.rhs_a(b2);
    const double b3 = b + 0.5 * h * kb2;
    const double kb3 = coeffs.rhs_b(b3);
    const double ka3 = coeffs.rhs_a(b3);
    const double b4 = b + h * kb3;
    const double kb4 = coeffs.rhs_b(b4);
    const double ka4 = coeffs.rhs_a(b4);
    b += h / 6.0 * (kb1 + 2.0 * kb2 + 2.0 * kb3 + kb4);
    a += h / 6.0 * (ka1 + 2.0 * ka2 + 2.0 * ka3 + ka4);
    if (!std::isfinite(b) || std::abs(b) > blowup_bound) {
      const double t = h * static_cast<double>(k + 1);
      throw RiccatiBlowUp(
          "Riccati solution exceeded |b| = " + std::to_string(blowup_bound) +
              " at s = " + std::to_string(t),
          t);
    }
    sol.b_grid_[k + 1] = b;
    sol.a_grid_[k + 1] = a;
  }
  return sol;
}

RiccatiSolution solve(const RiccatiCoeffs& coeffs, double T) {
  if (coeffs.discriminant() > 0.0 && coeffs.B2 > 0.0) {
    return solve_closed_form(coeffs, T);
  }
  return solve_numerical(coeffs, T);
}

}  // namespace icm
