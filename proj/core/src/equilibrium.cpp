#include "icm/equilibrium.hpp"

#include <cmath>
#include <stdexcept>

#include "icm/quadrature.hpp"

namespace icm {

double spot_rate(const AggregateParams& agg, double v) {
  return agg.rate_const + agg.rate_v * v;
}

double spot_rate_rep(const AggregateParams& agg, double v) {
  return agg.rate_const + agg.rate_v_rep * v;
}

double rate_gap(const AggregateParams& agg, double v) {
  return 0.5 * agg.delta_beta * v;
}

double mpr_instantaneous(const AggregateParams& agg, double v) {
  return agg.mu_S * std::sqrt(v);
}

double bond_price(const RiccatiSolution& sol, double t, double U, double v_t) {
  if (t > U) throw std::invalid_argument("bond_price: valuation after maturity");
  if (!(v_t >= 0.0)) throw std::invalid_argument("bond_price: v_t must be >= 0");
  if (t == U) return 1.0;
  const double s = U - t;
  return std::exp(sol.b(s) * v_t - sol.a(s));
}

double bond_price_dv(const RiccatiSolution& sol, double t, double U,
                     double v_t) {
  return sol.b(U - t) * bond_price(sol, t, U, v_t);
}

double annuity_price(const RiccatiSolution& sol, double t, double v_t,
                     double T, double nodes_per_year) {
  if (t >= T) return 0.0;
  return integrate(
      [&](double U) { return std::exp(sol.b(U - t) * v_t - sol.a(U - t)); }, t,
      T, nodes_per_year);
}

double annuity_vol(const RiccatiSolution& sol, double t, double v_t, double T,
                   double nodes_per_year) {
  if (t >= T) return 0.0;
  const double integral = integrate(
      [&](double U) {
        const double b = sol.b(U - t);
        return b * std::exp(b * v_t - sol.a(U - t));
      },
      t, T, nodes_per_year);
  return sol.coeffs().sigma_v * std::sqrt(v_t) * integral;
}

double discrete_mpr(const RiccatiSolution& sol, const AggregateParams& agg,
                    double t, double U) {
  if (t > U) throw std::invalid_argument("discrete_mpr: t must not exceed U");
  return agg.mu_S - sol.b(U - t) * agg.vol.sigma_v;
}

ConsumptionCoeffs optimal_consumption_coeffs(const AggregateParams& agg,
                                             const InvestorParams& inv) {
  ConsumptionCoeffs c;
  c.drift_const = inv.tau * agg.rate_const - inv.mu_Y;
  c.drift_v = inv.tau * agg.rate_v + 0.5 * inv.tau * agg.mu_S * agg.mu_S +
              0.5 * inv.beta_Y * inv.beta_Y / inv.tau - inv.kappa_Y;
  c.diffusion = inv.tau * agg.mu_S - inv.sigma_Y;
  return c;
}

EquilibriumSolutions solve_equilibrium(const AggregateParams& agg, double T) {
  return {solve(incomplete_coeffs(agg), T), solve(rep_coeffs(agg), T)};
}

TermStructure term_structure(const EquilibriumSolutions& sols, double t,
                             double v_t,
                             const std::vector<double>& maturities) {
  TermStructure ts;
  ts.t = t;
  ts.v_t = v_t;
  ts.maturities = maturities;
  ts.incomplete.reserve(maturities.size());
  ts.complete.reserve(maturities.size());
  for (double U : maturities) {
    ts.incomplete.push_back(bond_price(sols.incomplete, t, U, v_t));
    ts.complete.push_back(bond_price(sols.complete, t, U, v_t));
  }
  return ts;
}

double MprCurve::instantaneous_value(std::size_t k) const {
  return mu_S[k] * std::sqrt(v);
}
double MprCurve::discrete_value(std::size_t k) const {
  return discrete[k] * std::sqrt(v);
}
double MprCurve::discrete_rep_value(std::size_t k) const {
  return discrete_rep[k] * std::sqrt(v);
}

MprCurve mpr_curve(const EquilibriumSolutions& sols,
                   const AggregateParams& agg, double U, double v,
                   const std::vector<double>& times) {
  MprCurve curve;
  curve.U = U;
  curve.v = v;
  curve.times = times;
  for (double t : times) {
    curve.mu_S.push_back(agg.mu_S);
    curve.discrete.push_back(discrete_mpr(sols.incomplete, agg, t, U));
    curve.discrete_rep.push_back(discrete_mpr(sols.complete, agg, t, U));
  }
  return curve;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count < 2) throw std::invalid_argument("linspace: count must be >= 2");
  std::vector<double> out(count);
  const double h = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = lo + h * static_cast<double>(k);
  }
  out.back() = hi;
  return out;
}

}  // namespace icm
