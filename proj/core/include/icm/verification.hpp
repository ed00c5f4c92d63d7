#pragma once

// Monte Carlo oracles for the closed forms and pathwise checks of the
// equilibrium identities (clearing, first-order conditions, martingales).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "icm/dynamics.hpp"
#include "icm/model.hpp"

namespace icm {

/// E^Qmin[exp(-int_0^U r ds)] for each maturity, from one simulation out to
/// the largest U. Maturities must fall on the time grid (U * n_steps
/// integral). Requires sim.measure == Qmin.
std::vector<McEstimate> mc_bond_prices(const EconomyParams& econ,
                                       const std::vector<double>& maturities,
                                       const SimConfig& sim, bool rep = false);

McEstimate mc_bond_price(const EconomyParams& econ, double U,
                         const SimConfig& sim, bool rep = false);

/// E^Qmin[int_0^T exp(-int_0^u r ds) du] (trapezoid in u).
McEstimate mc_annuity(const EconomyParams& econ, const SimConfig& sim);

enum class ForwardSecurity { Bond, LongBond, Annuity, MoneyMarket };

std::string to_string(ForwardSecurity s);
ForwardSecurity parse_forward_security(const std::string& name);

struct ForwardCheck {
  ForwardSecurity security = ForwardSecurity::Bond;
  double U = 0.0;
  double X0 = 0.0;
  McEstimate mean_return;  // E^{Q^U}[(X_U - X_0) / X_0]
  double target = 0.0;     // (1 - B(0,U)) / B(0,U)
  double z = 0.0;
};

/// Simulates under Q^U (sim.measure is overridden). Bond is the U-maturity
/// bond; LongBond matures at T; Annuity reinvests its dividends in the money
/// market; MoneyMarket starts at 1.
ForwardCheck verify_forward_measure(const EconomyParams& econ, double U,
                                    ForwardSecurity security,
                                    const SimConfig& sim);

struct Multipliers {
  std::vector<double> c0;
  std::vector<double> c0_se;
  std::vector<double> log_alpha;
  std::vector<double> alpha;
  McEstimate annuity;             // E[int_0^T xi^min du]
  double annuity_closed = 0.0;    // S_0
};

/// Solves the budget equations E[int xi^min c_i du] = X_i0 using that they
/// are affine in c_i0. Simulates under P.
Multipliers solve_multipliers(const EconomyParams& econ, const SimConfig& sim);

struct ClearingReport {
  double max_residual = 0.0;  // max |sum_i c_it - sum_i c_i0|
  double initial_sum = 0.0;   // sum_i c_i0
  std::size_t n_paths = 0;
  std::size_t n_steps = 0;
};

/// Pathwise goods-market clearing. Without `c0` every investor starts at
/// zero consumption.
ClearingReport verify_clearing(
    const EconomyParams& econ, const SimConfig& sim,
    const std::optional<std::vector<double>>& c0 = std::nullopt);

struct FocReport {
  double max_residual_spanned = 0.0;  // against alpha xi^min, income Y~
  double max_residual_full = 0.0;     // against alpha pi xi^min, income Y
  double dt = 0.0;
  std::size_t n_paths = 0;
};

/// Log first-order-condition residuals of investor i along simulated P
/// paths.
FocReport verify_foc(const EconomyParams& econ, const SimConfig& sim,
                     std::size_t investor, const Multipliers& mult);

struct ConvergenceStudy {
  std::vector<std::size_t> steps;  // per unit time
  std::vector<double> dt;
  std::vector<double> error;
  std::vector<double> order;  // log2(error[l] / error[l + 1])
};

/// FOC residual on `levels` grids with sim.n_steps, 2 sim.n_steps, ...
/// steps per unit time, all built from the same finest Brownian increments.
ConvergenceStudy foc_convergence(const EconomyParams& econ,
                                 const SimConfig& sim, std::size_t investor,
                                 const Multipliers& mult,
                                 std::size_t levels = 4);

/// Bond-price bias |MC - closed form| under Qmin on coupled grids (shared
/// finest increments, one estimate per level).
ConvergenceStudy bond_weak_convergence(const EconomyParams& econ, double U,
                                       const SimConfig& sim,
                                       std::size_t levels = 4);

struct RiskPremiumCheck {
  ForwardSecurity security = ForwardSecurity::Annuity;
  double U = 0.0;
  double lhs = 0.0;  // E[(X_U - X_0)/X_0] - (1 - B)/B
  double lhs_se = 0.0;
  double rhs = 0.0;  // -Cov(M^{Q^U}_U, X_U) / X_0
  double rhs_se = 0.0;
  double difference = 0.0;
  double difference_se = 0.0;
  double z = 0.0;
};

/// Both sides of the forward-measure risk-premium identity on the same P
/// paths. Security must be LongBond or Annuity.
RiskPremiumCheck mc_risk_premium(const EconomyParams& econ, double U,
                                 ForwardSecurity security,
                                 const SimConfig& sim);

struct MartingaleCheck {
  McEstimate state_price;             // E[M^min_T]
  std::vector<McEstimate> densities;  // E[pi_iT]
};

/// Sample means of the discrete (left-point) Radon-Nikodym martingales;
/// each should equal one.
MartingaleCheck verify_martingales(const EconomyParams& econ,
                                   const SimConfig& sim);

struct BudgetMartingaleReport {
  std::vector<double> times;
  std::vector<double> mean;  // E[xi_t X_t + int_0^t xi c du]
  std::vector<double> se;
  std::vector<double> z;     // against the t = 0 value
  double max_abs_z = 0.0;
};

/// Nested simulation of the wealth process X_t of investor i at
/// `checkpoints` equally spaced times in [0, T). Expensive: sim.n_paths outer
/// paths times `inner` Qmin paths per checkpoint.
BudgetMartingaleReport verify_budget_martingale(const EconomyParams& econ,
                                                const SimConfig& sim,
                                                std::size_t investor,
                                                const Multipliers& mult,
                                                std::size_t inner,
                                                std::size_t checkpoints);

}  // namespace icm
