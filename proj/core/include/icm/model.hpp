#pragma once

// Parameter containers for the exponential-utility exchange economy with
// square-root (CIR) income volatility, plus the aggregate constants that
// every closed form downstream is written in terms of.

#include <cstddef>
#include <string>
#include <vector>

namespace icm {

/// Income-volatility process dv = (mu_v + kappa_v v) dt + sigma_v sqrt(v) dW.
struct VolParams {
  double mu_v = 0.0;
  double kappa_v = 0.0;
  double sigma_v = 0.0;
  double v0 = 1.0;
};

/// One investor: exponential utility with risk tolerance tau and income
/// dY = (mu_Y + kappa_Y v) dt + sqrt(v) (sigma_Y dW + beta_Y dZ).
struct InvestorParams {
  double tau = 1.0;
  double mu_Y = 0.0;
  double kappa_Y = 0.0;
  double sigma_Y = 0.0;
  double beta_Y = 0.0;
  double Y0 = 0.0;
  double X0 = 0.0;
};

struct EconomyParams {
  VolParams vol;
  std::vector<InvestorParams> investors;
  double horizon_T = 1.0;

  std::size_t size() const noexcept { return investors.size(); }
};

/// Builds an economy of `count` identical copies of `investor`, each with
/// zero initial financial wealth.
EconomyParams replicate(const VolParams& vol, const InvestorParams& investor,
                        std::size_t count, double horizon_T);

/// Derived constants. For a finite economy the sums run over investors; for
/// the I -> infinity limit (`per_capita == true`) they are population
/// averages and terms carrying 1/tau_sigma^2 sum_i beta_i^2 vanish.
///
/// Downstream formulas only use the ratio fields (mu_S, rate_*, B*, q*,
/// delta_beta), which are well defined in both cases.
struct AggregateParams {
  VolParams vol;
  bool per_capita = false;

  double tau_sigma = 0.0;
  double sigma_E = 0.0;
  double kappa_E = 0.0;
  double mu_E = 0.0;
  double beta_weighted = 0.0;  // sum beta_i^2 / tau_i
  double beta_sq_sum = 0.0;    // sum beta_i^2

  double mu_S = 0.0;        // sigma_E / tau_sigma
  double delta_beta = 0.0;  // incompleteness gap, >= 0

  // r = rate_const + rate_v v, r_rep = rate_const + rate_v_rep v
  double rate_const = 0.0;
  double rate_v = 0.0;
  double rate_v_rep = 0.0;

  // b' = B0 + B1 b + B2 b^2 (incomplete), B0_rep for the complete market
  double B0 = 0.0;
  double B1 = 0.0;
  double B2 = 0.0;
  double B0_rep = 0.0;
  double q = 0.0;      // B1^2 - 2 sigma_v^2 B0
  double q_rep = 0.0;  // B1^2 - 2 sigma_v^2 B0_rep
};

AggregateParams derive_aggregates(const EconomyParams& econ);

/// Per-capita characteristics of one homogeneous group in the limiting model.
struct GroupParams {
  double tau = 1.0;
  double beta_Y = 0.0;
  double sigma_Y = 0.0;
  double kappa_Y = 0.0;
  double mu_Y = 0.0;
};

/// Population split into two homogeneous groups; `w` is group A's share.
struct TwoGroupLimit {
  double w = 1.0;
  GroupParams groupA;
  GroupParams groupB;
};

/// Aggregates of the I -> infinity economy. Throws std::invalid_argument for
/// w outside [0, 1] or non-positive risk tolerances.
AggregateParams limit_aggregates(const TwoGroupLimit& limit,
                                 const VolParams& vol);

/// Finite economy with `count` investors in which round(w * count) belong to
/// group A; used to cross-check limit_aggregates.
EconomyParams two_group_economy(const TwoGroupLimit& limit,
                                const VolParams& vol, std::size_t count,
                                double horizon_T);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  bool hard = true;  // informational checks never fail a report
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const noexcept;
  const ValidationCheck* find(const std::string& name) const noexcept;
  std::vector<std::string> failures() const;
};

/// Checks the standing assumptions. Never throws on assumption failure.
ValidationReport validate(const EconomyParams& econ);

/// Throws std::invalid_argument listing the failed hard checks.
void require_valid(const EconomyParams& econ);

/// Smallest s > 0 at which the solution of b' = B0 + B1 b + B2 b^2, b(0) = 0
/// blows up, or +inf when it stays finite on [0, inf).
double riccati_blowup_time(double B0, double B1, double B2);

}  // namespace icm
