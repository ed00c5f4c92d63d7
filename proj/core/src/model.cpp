#include "icm/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace icm {

namespace {

// Fills the ratio fields from the raw sums. `rep_beta_term` is
// (1 / tau_sigma^2) sum beta_i^2, which is zero in the per-capita limit.
void finish_aggregates(AggregateParams& agg, double rep_beta_term) {
  const double ts = agg.tau_sigma;
  const double sv = agg.vol.sigma_v;

  agg.mu_S = agg.sigma_E / ts;
  agg.delta_beta = agg.beta_weighted / ts - rep_beta_term;

  const double spanned = agg.sigma_E * agg.sigma_E / (2.0 * ts);
  agg.rate_const = agg.mu_E / ts;
  agg.rate_v = (agg.kappa_E - 0.5 * agg.beta_weighted - spanned) / ts;
  agg.rate_v_rep = agg.kappa_E / ts - 0.5 * rep_beta_term - spanned / ts;

  agg.B2 = 0.5 * sv * sv;
  agg.B1 = agg.vol.kappa_v - agg.mu_S * sv;
  agg.B0 = (0.5 * agg.beta_weighted + spanned - agg.kappa_E) / ts;
  agg.B0_rep = 0.5 * rep_beta_term + (spanned - agg.kappa_E) / ts;
  agg.q = agg.B1 * agg.B1 - 2.0 * sv * sv * agg.B0;
  agg.q_rep = agg.B1 * agg.B1 - 2.0 * sv * sv * agg.B0_rep;
}

void check_group(const GroupParams& g, const char* label) {
  if (!(g.tau > 0.0)) {
    throw std::invalid_argument(std::string("group ") + label +
                                ": risk tolerance must be positive");
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

EconomyParams replicate(const VolParams& vol, const InvestorParams& investor,
                        std::size_t count, double horizon_T) {
  EconomyParams econ;
  econ.vol = vol;
  econ.horizon_T = horizon_T;
  InvestorParams copy = investor;
  copy.X0 = 0.0;
  econ.investors.assign(count, copy);
  return econ;
}

AggregateParams derive_aggregates(const EconomyParams& econ) {
  AggregateParams agg;
  agg.vol = econ.vol;
  for (const auto& inv : econ.investors) {
    agg.tau_sigma += inv.tau;
    agg.sigma_E += inv.sigma_Y;
    agg.kappa_E += inv.kappa_Y;
    agg.mu_E += inv.mu_Y;
    agg.beta_weighted += inv.beta_Y * inv.beta_Y / inv.tau;
    agg.beta_sq_sum += inv.beta_Y * inv.beta_Y;
  }
  finish_aggregates(agg, agg.beta_sq_sum / (agg.tau_sigma * agg.tau_sigma));
  return agg;
}

AggregateParams limit_aggregates(const TwoGroupLimit& limit,
                                 const VolParams& vol) {
  if (!(limit.w >= 0.0 && limit.w <= 1.0)) {
    throw std::invalid_argument("population weight w must lie in [0, 1]");
  }
  check_group(limit.groupA, "A");
  check_group(limit.groupB, "B");

  const double wa = limit.w;
  const double wb = 1.0 - limit.w;
  const auto& a = limit.groupA;
  const auto& b = limit.groupB;

  AggregateParams agg;
  agg.vol = vol;
  agg.per_capita = true;
  agg.tau_sigma = wa * a.tau + wb * b.tau;
  agg.sigma_E = wa * a.sigma_Y + wb * b.sigma_Y;
  agg.kappa_E = wa * a.kappa_Y + wb * b.kappa_Y;
  agg.mu_E = wa * a.mu_Y + wb * b.mu_Y;
  agg.beta_weighted =
      wa * a.beta_Y * a.beta_Y / a.tau + wb * b.beta_Y * b.beta_Y / b.tau;
  agg.beta_sq_sum = wa * a.beta_Y * a.beta_Y + wb * b.beta_Y * b.beta_Y;
  finish_aggregates(agg, 0.0);
  return agg;
}

EconomyParams two_group_economy(const TwoGroupLimit& limit,
                                const VolParams& vol, std::size_t count,
                                double horizon_T) {
  if (!(limit.w >= 0.0 && limit.w <= 1.0)) {
    throw std::invalid_argument("population weight w must lie in [0, 1]");
  }
  const auto n_a = static_cast<std::size_t>(
      std::llround(limit.w * static_cast<double>(count)));
  EconomyParams econ;
  econ.vol = vol;
  econ.horizon_T = horizon_T;
  econ.investors.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const GroupParams& g = i < n_a ? limit.groupA : limit.groupB;
    InvestorParams inv;
    inv.tau = g.tau;
    inv.beta_Y = g.beta_Y;
    inv.sigma_Y = g.sigma_Y;
    inv.kappa_Y = g.kappa_Y;
    inv.mu_Y = g.mu_Y;
    econ.investors.push_back(inv);
  }
  return econ;
}

double riccati_blowup_time(double B0, double B1, double B2) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (B2 < 0.0) {
    // c = -b solves c' = -B0 + B1 c - B2 c^2.
    return riccati_blowup_time(-B0, B1, -B2);
  }
  if (B2 == 0.0 || B0 == 0.0) {
    return inf;
  }
  const double q = B1 * B1 - 4.0 * B2 * B0;
  if (q > 0.0) {
    const double g = std::sqrt(q);
    if (B1 > g) {
      return std::log((B1 + g) / (B1 - g)) / g;
    }
    return inf;
  }
  if (q == 0.0) {
    return B1 > 0.0 ? 2.0 / B1 : inf;
  }
  const double w = std::sqrt(-q);
  return (0.5 * std::numbers::pi - std::atan(B1 / w)) * 2.0 / w;
}

bool ValidationReport::ok() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) {
    return c.passed || !c.hard;
  });
}

const ValidationCheck* ValidationReport::find(
    const std::string& name) const noexcept {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<std::string> ValidationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (c.hard && !c.passed) out.push_back(c.name + ": " + c.detail);
  }
  return out;
}

ValidationReport validate(const EconomyParams& econ) {
  ValidationReport report;
  auto add = [&](std::string name, bool passed, bool hard,
                 std::string detail) {
    report.checks.push_back(
        {std::move(name), passed, hard, std::move(detail)});
  };

  const auto& vol = econ.vol;
  const double half_var = 0.5 * vol.sigma_v * vol.sigma_v;

  add("horizon_positive", econ.horizon_T > 0.0, true,
      "T = " + fmt(econ.horizon_T));
  add("v0_positive", vol.v0 > 0.0, true, "v0 = " + fmt(vol.v0));
  add("feller_drift", vol.mu_v >= half_var, true,
      "mu_v = " + fmt(vol.mu_v) + ", sigma_v^2/2 = " + fmt(half_var));
  add("feller_nondegenerate", half_var > 0.0, true,
      "sigma_v^2/2 = " + fmt(half_var));

  const bool nonempty = !econ.investors.empty();
  add("investors_nonempty", nonempty, true,
      std::to_string(econ.investors.size()) + " investors");

  bool params_ok = true;
  std::string bad;
  double x0_sum = 0.0;
  double x0_scale = 1.0;
  for (std::size_t i = 0; i < econ.investors.size(); ++i) {
    const auto& inv = econ.investors[i];
    if (!(inv.tau > 0.0) || inv.sigma_Y < 0.0 || inv.beta_Y < 0.0) {
      params_ok = false;
      if (bad.empty()) bad = "investor " + std::to_string(i);
    }
    x0_sum += inv.X0;
    x0_scale = std::max(x0_scale, std::abs(inv.X0));
  }
  add("investor_params", params_ok, true,
      params_ok ? "tau > 0, sigma_Y >= 0, beta_Y >= 0"
                : bad + " violates tau > 0, sigma_Y >= 0, beta_Y >= 0");
  add("zero_net_supply",
      std::abs(x0_sum) <= 1e-12 * x0_scale *
                              static_cast<double>(econ.investors.size() + 1),
      true, "sum X0 = " + fmt(x0_sum));

  if (!nonempty || !params_ok) {
    return report;
  }

  const AggregateParams agg = derive_aggregates(econ);
  add("discriminant_positive", agg.q > 0.0, true, "q = " + fmt(agg.q));
  add("riccati_constant_nonzero", agg.B0 != 0.0, true,
      "B0 = " + fmt(agg.B0));

  const double blowup = riccati_blowup_time(agg.B0, agg.B1, agg.B2);
  add("riccati_finite_on_horizon", blowup > econ.horizon_T, true,
      std::isinf(blowup) ? "no blow-up" : "blow-up at s = " + fmt(blowup));

  // Sufficient condition for a spot rate bounded below; it only decides the
  // sign of b and is reported for information.
  const double rhs = agg.beta_weighted / (2.0 * agg.tau_sigma) +
                     agg.sigma_E * agg.sigma_E /
                         (2.0 * agg.tau_sigma * agg.tau_sigma);
  const bool r_bounded = agg.kappa_E / agg.tau_sigma > rhs;
  add("rate_bounded_below", r_bounded, false,
      r_bounded ? "b < 0; r >= mu_E / tau_sigma"
                : "b > 0; r unbounded below");
  return report;
}

void require_valid(const EconomyParams& econ) {
  const auto report = validate(econ);
  if (report.ok()) return;
  std::string msg = "invalid economy:";
  for (const auto& f : report.failures()) msg += "\n  " + f;
  throw std::invalid_argument(msg);
}

}  // namespace icm
