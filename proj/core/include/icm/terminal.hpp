#pragma once

// Terminal-consumption variant: zero interest rate and the deterministic
// market price of risk mu_S(t) = sigma_E / tau_sigma - b(T - t) sigma_v.

#include <cstddef>
#include <vector>

#include "icm/dynamics.hpp"
#include "icm/model.hpp"
#include "icm/riccati.hpp"
#include "icm/verification.hpp"

namespace icm {

/// mu_S(t) for t in [0, T]; throws std::invalid_argument outside.
double terminal_mpr(const RiccatiSolution& sol, const AggregateParams& agg,
                    double t, double T);

class TerminalEquilibrium {
 public:
  /// Solves the incomplete-market Riccati equation on [0, T]; throws
  /// RiccatiBlowUp if it explodes first.
  explicit TerminalEquilibrium(const EconomyParams& econ);

  const AggregateParams& aggregates() const noexcept { return agg_; }
  const RiccatiSolution& riccati() const noexcept { return sol_; }
  double horizon() const noexcept { return T_; }

  double mu_S(double t) const { return terminal_mpr(sol_, agg_, t, T_); }
  double mpr_value(double t, double v) const;
  double rate() const noexcept { return 0.0; }

  /// dW-loading of the martingale
  ///   tau_sigma sigma_v int_0^t b(T-u) sqrt(v_u) dW_u
  ///     + E_t[int_0^T h(u) v_u du],
  /// with h = kappa_E - sum beta_i^2/(2 tau_i) - tau_sigma mu_S(u)^2 / 2,
  /// divided by sqrt(v_t). Vanishes identically.
  double martingale_loading(double t, double nodes_per_year = 64.0) const;

 private:
  AggregateParams agg_;
  double T_;
  RiccatiSolution sol_;
};

struct TerminalClearingReport {
  double max_residual = 0.0;   // max over paths of |sum_i X_iT|
  double max_loading = 0.0;    // max over the grid of |martingale loading|
  std::vector<double> log_tau_alpha;  // log(tau_i alpha_i)
  std::size_t n_paths = 0;
  std::size_t n_steps = 0;
  double dt = 0.0;
};

/// Solves the terminal budget equations under Qmin (self-normalized P
/// weights xi_T) and reports the pathwise clearing residual.
TerminalClearingReport verify_terminal_clearing(const EconomyParams& econ,
                                                const SimConfig& sim);

/// Clearing residual on nested grids built from shared increments.
ConvergenceStudy terminal_clearing_convergence(const EconomyParams& econ,
                                               const SimConfig& sim,
                                               std::size_t levels = 4);

}  // namespace icm
