#pragma once

// Closed-form equilibrium quantities and their complete-market
// (representative-agent) counterparts.

#include <vector>

#include "icm/model.hpp"
#include "icm/riccati.hpp"

namespace icm {

/// Default quadrature density for maturity integrals.
inline constexpr double kNodesPerYear = 64.0;

double spot_rate(const AggregateParams& agg, double v);
double spot_rate_rep(const AggregateParams& agg, double v);

/// r_rep - r = (1/2) delta_beta v.
double rate_gap(const AggregateParams& agg, double v);

/// Instantaneous market price of risk mu_S sqrt(v); identical in the
/// incomplete and complete economies.
double mpr_instantaneous(const AggregateParams& agg, double v);

/// B(t, U) = exp(b(U - t) v_t - a(U - t)). Throws std::invalid_argument when
/// t > U or v_t < 0.
double bond_price(const RiccatiSolution& sol, double t, double U, double v_t);

/// dB/dv_t = b(U - t) B(t, U).
double bond_price_dv(const RiccatiSolution& sol, double t, double U,
                     double v_t);

/// S_t = int_t^T B(t, U) dU.
double annuity_price(const RiccatiSolution& sol, double t, double v_t,
                     double T, double nodes_per_year = kNodesPerYear);

/// sigma_St = sigma_v sqrt(v_t) int_t^T B(t, U) b(U - t) dU.
double annuity_vol(const RiccatiSolution& sol, double t, double v_t, double T,
                   double nodes_per_year = kNodesPerYear);

/// Deterministic coefficient mu_S - b(U - t) sigma_v of the discrete market
/// price of risk over [0, U]; pass the complete-market solution for the
/// representative-agent variant. Throws std::invalid_argument for t > U.
double discrete_mpr(const RiccatiSolution& sol, const AggregateParams& agg,
                    double t, double U);

/// Coefficients of the optimal consumption dynamics
///   dc = (drift_const + drift_v v) dt + diffusion sqrt(v) dW
/// with the spot rate substituted so the drift is affine in v.
struct ConsumptionCoeffs {
  double drift_const = 0.0;
  double drift_v = 0.0;
  double diffusion = 0.0;
};

ConsumptionCoeffs optimal_consumption_coeffs(const AggregateParams& agg,
                                             const InvestorParams& investor);

/// Both economies' Riccati solutions on [0, T].
struct EquilibriumSolutions {
  RiccatiSolution incomplete;
  RiccatiSolution complete;
};

EquilibriumSolutions solve_equilibrium(const AggregateParams& agg, double T);

struct TermStructure {
  double t = 0.0;
  double v_t = 0.0;
  std::vector<double> maturities;
  std::vector<double> incomplete;
  std::vector<double> complete;
};

TermStructure term_structure(const EquilibriumSolutions& sols, double t,
                             double v_t, const std::vector<double>& maturities);

struct MprCurve {
  double U = 0.0;
  double v = 0.0;  // variance level the process values are evaluated at
  std::vector<double> times;
  std::vector<double> mu_S;           // instantaneous coefficient
  std::vector<double> discrete;       // mu_S^dis(t)
  std::vector<double> discrete_rep;   // mu_S^dis,rep(t)

  double instantaneous_value(std::size_t k) const;
  double discrete_value(std::size_t k) const;
  double discrete_rep_value(std::size_t k) const;
};

MprCurve mpr_curve(const EquilibriumSolutions& sols,
                   const AggregateParams& agg, double U, double v,
                   const std::vector<double>& times);

/// Evenly spaced grid of `count` points on [lo, hi] (count >= 2).
std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace icm
