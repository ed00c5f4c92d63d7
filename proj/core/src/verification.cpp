#include "icm/verification.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "icm/equilibrium.hpp"
#include "icm/rng.hpp"
#include "coupled_grids.hpp"

namespace icm {

using detail::CoupledGrids;
using detail::finish_study;

namespace {

constexpr std::uint32_t kStreamFineW = 21;
constexpr std::uint32_t kStreamFineZ = 22;
constexpr std::uint32_t kStreamInner = 31;

inline double pos(double x) noexcept { return x > 0.0 ? x : 0.0; }

std::size_t grid_index(const PathEngine& engine, double t) {
  const double x = t / engine.dt();
  const auto k = static_cast<std::size_t>(std::llround(x));
  if (std::abs(x - static_cast<double>(k)) > 1e-7 || k > engine.steps()) {
    throw std::invalid_argument("time " + std::to_string(t) +
                                " is not on the simulation grid");
  }
  return k;
}

std::size_t total_paths(const PathEngine& engine) {
  return engine.samples() * engine.paths_per_sample();
}

double trapezoid(const std::vector<double>& f, double dt, std::size_t from,
                 std::size_t to) {
  double s = 0.0;
  for (std::size_t k = from; k < to; ++k) s += 0.5 * dt * (f[k] + f[k + 1]);
  return s;
}

// Terminal value of a traded security at U given the path under the
// simulation measure; R is the running rate integral.
struct SecurityValuer {
  ForwardSecurity security;
  const EquilibriumSolutions* sols;
  double T;
  std::size_t kU;
  double dt;

  double operator()(const Path& p, const std::vector<double>& R) const {
    const double vU = pos(p.v[kU]);
    const double U = dt * static_cast<double>(kU);
    switch (security) {
      case ForwardSecurity::Bond:
        return 1.0;
      case ForwardSecurity::LongBond:
        return bond_price(sols->incomplete, std::min(U, T), T, vU);
      case ForwardSecurity::MoneyMarket:
        return std::exp(R[kU]);
      case ForwardSecurity::Annuity: {
        double acc = 0.0;
        for (std::size_t k = 0; k < kU; ++k) {
          acc += 0.5 * dt * (std::exp(-R[k]) + std::exp(-R[k + 1]));
        }
        return annuity_price(sols->incomplete, U, vU, T) +
               std::exp(R[kU]) * acc;
      }
    }
    return 0.0;
  }
};

double initial_value(ForwardSecurity s, const EquilibriumSolutions& sols,
                     double U, double T, double v0) {
  switch (s) {
    case ForwardSecurity::Bond: return bond_price(sols.incomplete, 0.0, U, v0);
    case ForwardSecurity::LongBond:
      return bond_price(sols.incomplete, 0.0, T, v0);
    case ForwardSecurity::MoneyMarket: return 1.0;
    case ForwardSecurity::Annuity:
      return annuity_price(sols.incomplete, 0.0, v0, T);
  }
  return 0.0;
}

// Largest FOC residual along one path.
double foc_residual(const PathEngine& engine, const Path& p, std::size_t i,
                    const Multipliers& mult) {
  const auto& inv = engine.economy().investors[i];
  const double tau = inv.tau;
  const double log_tau = std::log(tau);
  const double log_alpha = mult.log_alpha.at(i);
  const auto c = engine.consumption(p, i, mult.c0.at(i));
  const auto ys = engine.spanned_income(p, i);
  const auto lx = engine.log_xi_min(p);
  double worst = 0.0;
  const bool full = p.dZ.size() > i;
  std::vector<double> y, lp;
  if (full) {
    y = engine.income(p, i);
    lp = engine.log_pi(p, i);
  }
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double r1 = -log_tau - (c[k] + ys[k]) / tau - log_alpha - lx[k];
    worst = std::max(worst, std::abs(r1));
    if (full) {
      const double r2 =
          -log_tau - (c[k] + y[k]) / tau - log_alpha - lp[k] - lx[k];
      worst = std::max(worst, std::abs(r2));
    }
  }
  return worst;
}

}  // namespace

std::vector<McEstimate> mc_bond_prices(const EconomyParams& econ,
                                       const std::vector<double>& maturities,
                                       const SimConfig& sim, bool rep) {
  if (sim.measure != Measure::Qmin) {
    throw std::invalid_argument("bond prices are simulated under Qmin");
  }
  double max_U = 0.0;
  for (double U : maturities) {
    if (U < 0.0 || U > econ.horizon_T * (1.0 + 1e-12)) {
      throw std::invalid_argument("maturity outside [0, T]");
    }
    max_U = std::max(max_U, U);
  }
  std::vector<McEstimate> out(maturities.size());
  if (max_U == 0.0) {
    for (auto& e : out) {
      e.value = 1.0;
      e.measure = sim.measure;
      e.seed = sim.seed;
    }
    return out;
  }
  SimConfig s = sim;
  s.horizon = max_U;
  const PathEngine engine(econ, s);
  std::vector<std::size_t> idx;
  for (double U : maturities) idx.push_back(grid_index(engine, U));
  const auto& agg = engine.aggregates();
  const double rv = rep ? agg.rate_v_rep : agg.rate_v;
  const double dt = engine.dt();
  const auto acc = run_samples(engine, idx.size(), [&](const Path& p, double* o) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const std::size_t k = idx[j];
      o[j] = std::exp(-(agg.rate_const * dt * static_cast<double>(k) +
                        rv * p.int_v[k]));
    }
  });
  for (std::size_t j = 0; j < idx.size(); ++j) {
    out[j] = make_estimate(acc, j, s, total_paths(engine));
  }
  return out;
}

McEstimate mc_bond_price(const EconomyParams& econ, double U,
                         const SimConfig& sim, bool rep) {
  return mc_bond_prices(econ, {U}, sim, rep).front();
}

McEstimate mc_annuity(const EconomyParams& econ, const SimConfig& sim) {
  if (sim.measure != Measure::Qmin) {
    throw std::invalid_argument("the annuity is simulated under Qmin");
  }
  SimConfig s = sim;
  s.horizon = econ.horizon_T;
  const PathEngine engine(econ, s);
  const double dt = engine.dt();
  const auto acc = run_samples(engine, 1, [&](const Path& p, double* o) {
    const auto R = engine.rate_integral(p);
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < R.size(); ++k) {
      sum += 0.5 * dt * (std::exp(-R[k]) + std::exp(-R[k + 1]));
    }
    o[0] = sum;
  });
  return make_estimate(acc, 0, s, total_paths(engine));
}

std::string to_string(ForwardSecurity s) {
  switch (s) {
    case ForwardSecurity::Bond: return "bond";
    case ForwardSecurity::LongBond: return "long_bond";
    case ForwardSecurity::Annuity: return "annuity";
    case ForwardSecurity::MoneyMarket: return "money_market";
  }
  return "?";
}

ForwardSecurity parse_forward_security(const std::string& name) {
  if (name == "bond") return ForwardSecurity::Bond;
  if (name == "long_bond") return ForwardSecurity::LongBond;
  if (name == "annuity") return ForwardSecurity::Annuity;
  if (name == "money_market") return ForwardSecurity::MoneyMarket;
  throw std::invalid_argument("unknown security '" + name + "'");
}

ForwardCheck verify_forward_measure(const EconomyParams& econ, double U,
                                    ForwardSecurity security,
                                    const SimConfig& sim) {
  const double T = econ.horizon_T;
  const auto agg = derive_aggregates(econ);
  const auto sols = solve_equilibrium(agg, T);
  const double v0 = econ.vol.v0;

  ForwardCheck check;
  check.security = security;
  check.U = U;
  check.X0 = initial_value(security, sols, U, T, v0);
  const double B = bond_price(sols.incomplete, 0.0, U, v0);
  check.target = (1.0 - B) / B;

  if (security == ForwardSecurity::Bond) {
    check.mean_return.value = (1.0 - check.X0) / check.X0;
    check.mean_return.measure = Measure::Forward;
    check.mean_return.seed = sim.seed;
    check.z = check.mean_return.z(check.target);
    return check;
  }

  SimConfig s = sim;
  s.measure = Measure::Forward;
  s.forward_U = U;
  s.horizon = U;
  const PathEngine engine(econ, s);
  const SecurityValuer value{security, &sols, T, engine.steps(), engine.dt()};
  const double X0 = check.X0;
  const auto acc = run_samples(engine, 1, [&](const Path& p, double* o) {
    o[0] = value(p, engine.rate_integral(p)) / X0 - 1.0;
  });
  check.mean_return = make_estimate(acc, 0, s, total_paths(engine));
  check.z = check.mean_return.z(check.target);
  return check;
}

Multipliers solve_multipliers(const EconomyParams& econ,
                              const SimConfig& sim) {
  SimConfig s = sim;
  s.measure = Measure::P;
  s.horizon = econ.horizon_T;
  const PathEngine engine(econ, s);
  const std::size_t I = econ.investors.size();
  const double dt = engine.dt();

  const auto acc = run_samples(engine, I + 1, [&](const Path& p, double* o) {
    const auto lx = engine.log_xi_min(p);
    std::vector<double> xi(lx.size());
    for (std::size_t k = 0; k < xi.size(); ++k) xi[k] = std::exp(lx[k]);
    o[0] = trapezoid(xi, dt, 0, xi.size() - 1);
    std::vector<double> w(xi.size());
    for (std::size_t i = 0; i < I; ++i) {
      const auto c = engine.consumption(p, i, 0.0);
      for (std::size_t k = 0; k < w.size(); ++k) w[k] = xi[k] * c[k];
      o[i + 1] = trapezoid(w, dt, 0, w.size() - 1);
    }
  });

  Multipliers m;
  const double A = acc.mean(0);
  if (!std::isfinite(A) || !(A > 0.0)) {
    throw std::runtime_error("non-finite state-price annuity estimate");
  }
  m.annuity = make_estimate(acc, 0, s, total_paths(engine));
  const auto agg = derive_aggregates(econ);
  m.annuity_closed =
      annuity_price(solve(incomplete_coeffs(agg), econ.horizon_T), 0.0,
                    econ.vol.v0, econ.horizon_T);
  const double n = static_cast<double>(acc.count());
  for (std::size_t i = 0; i < I; ++i) {
    const auto& inv = econ.investors[i];
    const double Bi = acc.mean(i + 1);
    const double c0 = (inv.X0 - Bi) / A;
    if (!std::isfinite(c0)) {
      throw std::runtime_error("non-finite consumption multiplier");
    }
    // delta method on (A, B_i)
    const double gA = -(inv.X0 - Bi) / (A * A);
    const double gB = -1.0 / A;
    const double var = gA * gA * acc.covariance(0, 0) +
                       2.0 * gA * gB * acc.covariance(0, i + 1) +
                       gB * gB * acc.covariance(i + 1, i + 1);
    m.c0.push_back(c0);
    m.c0_se.push_back(std::sqrt(std::max(0.0, var) / n));
    const double la = -(c0 + inv.Y0) / inv.tau - std::log(inv.tau);
    m.log_alpha.push_back(la);
    m.alpha.push_back(std::exp(la));
  }
  return m;
}

ClearingReport verify_clearing(const EconomyParams& econ,
                               const SimConfig& sim,
                               const std::optional<std::vector<double>>& c0) {
  SimConfig s = sim;
  s.measure = Measure::P;
  s.horizon = econ.horizon_T;
  const PathEngine engine(econ, s);
  const std::size_t I = econ.investors.size();
  std::vector<double> start = c0 ? *c0 : std::vector<double>(I, 0.0);
  if (start.size() != I) {
    throw std::invalid_argument("one initial consumption per investor");
  }

  ClearingReport report;
  for (double c : start) report.initial_sum += c;
  report.n_paths = total_paths(engine);
  report.n_steps = engine.steps();
  const double initial = report.initial_sum;

  report.max_residual = reduce_chunks(
      report.n_paths, s.chunk_size, s.threads, 0.0,
      [&](std::size_t begin, std::size_t end, double& worst) {
        Path p;
        std::vector<double> total;
        for (std::size_t j = begin; j < end; ++j) {
          engine.simulate(j, p);
          total.assign(p.v.size(), 0.0);
          for (std::size_t i = 0; i < I; ++i) {
            const auto c = engine.consumption(p, i, start[i]);
            for (std::size_t k = 0; k < c.size(); ++k) total[k] += c[k];
          }
          for (double x : total) worst = std::max(worst, std::abs(x - initial));
        }
      },
      [](double& a, double b) { a = std::max(a, b); });
  return report;
}

FocReport verify_foc(const EconomyParams& econ, const SimConfig& sim,
                     std::size_t investor, const Multipliers& mult) {
  if (investor >= econ.investors.size()) {
    throw std::out_of_range("investor index out of range");
  }
  SimConfig s = sim;
  s.measure = Measure::P;
  s.horizon = econ.horizon_T;
  s.idiosyncratic = true;
  const PathEngine engine(econ, s);

  struct Worst {
    double spanned = 0.0;
    double full = 0.0;
  };
  const auto& inv = econ.investors[investor];
  const double tau = inv.tau;
  const double log_tau = std::log(tau);
  const double log_alpha = mult.log_alpha.at(investor);
  const double c0 = mult.c0.at(investor);

  FocReport report;
  report.dt = engine.dt();
  report.n_paths = total_paths(engine);
  const auto worst = reduce_chunks(
      report.n_paths, s.chunk_size, s.threads, Worst{},
      [&](std::size_t begin, std::size_t end, Worst& w) {
        Path p;
        for (std::size_t j = begin; j < end; ++j) {
          engine.simulate(j, p);
          const auto c = engine.consumption(p, investor, c0);
          const auto ys = engine.spanned_income(p, investor);
          const auto y = engine.income(p, investor);
          const auto lx = engine.log_xi_min(p);
          const auto lp = engine.log_pi(p, investor);
          for (std::size_t k = 0; k < c.size(); ++k) {
            const double base = -log_tau - log_alpha - lx[k];
            w.spanned =
                std::max(w.spanned, std::abs(base - (c[k] + ys[k]) / tau));
            w.full = std::max(w.full,
                              std::abs(base - lp[k] - (c[k] + y[k]) / tau));
          }
        }
      },
      [](Worst& a, const Worst& b) {
        a.spanned = std::max(a.spanned, b.spanned);
        a.full = std::max(a.full, b.full);
      });
  report.max_residual_spanned = worst.spanned;
  report.max_residual_full = worst.full;
  return report;
}

ConvergenceStudy foc_convergence(const EconomyParams& econ,
                                 const SimConfig& sim, std::size_t investor,
                                 const Multipliers& mult, std::size_t levels) {
  if (investor >= econ.investors.size()) {
    throw std::out_of_range("investor index out of range");
  }
  SimConfig s = sim;
  s.measure = Measure::P;
  s.horizon = econ.horizon_T;
  s.idiosyncratic = true;
  const CoupledGrids grids(econ, s, levels);
  const std::size_t I = econ.investors.size();

  auto errors = reduce_chunks(
      s.n_paths, s.chunk_size, s.threads, std::vector<double>(levels, 0.0),
      [&](std::size_t begin, std::size_t end, std::vector<double>& worst) {
        std::vector<double> fine_w, fine_z;
        Path p;
        for (std::size_t j = begin; j < end; ++j) {
          RandomStream rw(s.seed, kStreamFineW, j);
          RandomStream rz(s.seed, kStreamFineZ, j);
          grids.draw(rw, fine_w);
          grids.draw(rz, fine_z);
          for (std::size_t l = 0; l < levels; ++l) {
            grids.coarsen(fine_w, l, p.dW);
            p.dZ.assign(I, {});
            grids.coarsen(fine_z, l, p.dZ[investor]);
            grids.engines[l].evolve(p);
            worst[l] = std::max(
                worst[l], foc_residual(grids.engines[l], p, investor, mult));
          }
        }
      },
      [](std::vector<double>& a, const std::vector<double>& b) {
        for (std::size_t l = 0; l < a.size(); ++l) a[l] = std::max(a[l], b[l]);
      });
  return finish_study(grids, std::move(errors));
}

ConvergenceStudy bond_weak_convergence(const EconomyParams& econ, double U,
                                       const SimConfig& sim,
                                       std::size_t levels) {
  SimConfig s = sim;
  s.measure = Measure::Qmin;
  s.horizon = U;
  const CoupledGrids grids(econ, s, levels);
  const auto agg = derive_aggregates(econ);
  const double closed = bond_price(solve(incomplete_coeffs(agg), U), 0.0, U,
                                   econ.vol.v0);

  const auto acc = reduce_chunks(
      s.n_paths, s.chunk_size, s.threads, MomentAccumulator(levels),
      [&](std::size_t begin, std::size_t end, MomentAccumulator& a) {
        std::vector<double> fine_w, out(levels);
        Path p;
        for (std::size_t j = begin; j < end; ++j) {
          RandomStream rw(s.seed, kStreamFineW, j);
          grids.draw(rw, fine_w);
          for (std::size_t l = 0; l < levels; ++l) {
            grids.coarsen(fine_w, l, p.dW);
            grids.engines[l].evolve(p);
            out[l] = std::exp(-grids.engines[l].rate_integral(p).back());
          }
          a.add(out.data());
        }
      },
      [](MomentAccumulator& a, const MomentAccumulator& b) { a.merge(b); });
  std::vector<double> errors(levels);
  for (std::size_t l = 0; l < levels; ++l) {
    errors[l] = std::abs(acc.mean(l) - closed);
  }
  return finish_study(grids, std::move(errors));
}

RiskPremiumCheck mc_risk_premium(const EconomyParams& econ, double U,
                                 ForwardSecurity security,
                                 const SimConfig& sim) {
  if (security != ForwardSecurity::LongBond &&
      security != ForwardSecurity::Annuity) {
    throw std::invalid_argument("risk premium needs long_bond or annuity");
  }
  const double T = econ.horizon_T;
  const auto agg = derive_aggregates(econ);
  const auto sols = solve_equilibrium(agg, T);
  const double v0 = econ.vol.v0;

  SimConfig s = sim;
  s.measure = Measure::P;
  s.horizon = U;
  const PathEngine engine(econ, s);
  const std::size_t n = engine.steps();
  const double dt = engine.dt();
  std::vector<double> mpr(n);
  for (std::size_t k = 0; k < n; ++k) {
    mpr[k] = discrete_mpr(sols.incomplete, agg, std::min(engine.time(k), U), U);
  }
  const SecurityValuer value{security, &sols, T, n, dt};
  const double X0 = initial_value(security, sols, U, T, v0);
  const double B = bond_price(sols.incomplete, 0.0, U, v0);

  const auto acc = run_samples(engine, 3, [&](const Path& p, double* o) {
    double logM = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      logM -= mpr[k] * p.sqrt_v_dW[k] + 0.5 * mpr[k] * mpr[k] * pos(p.v[k]) * dt;
    }
    const double M = std::exp(logM);
    const double X = value(p, engine.rate_integral(p));
    o[0] = X;
    o[1] = M * X;
    o[2] = M;
  });

  const double mX = acc.mean(0);
  const double mMX = acc.mean(1);
  const double mM = acc.mean(2);
  const double cnt = static_cast<double>(acc.count());
  auto quad = [&](const double g[3]) {
    double v = 0.0;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) v += g[a] * g[b] * acc.covariance(a, b);
    }
    return std::sqrt(std::max(0.0, v) / cnt);
  };

  RiskPremiumCheck r;
  r.security = security;
  r.U = U;
  r.lhs = mX / X0 - 1.0 / B;
  r.lhs_se = acc.standard_error(0) / X0;
  r.rhs = -(mMX - mM * mX) / X0;
  const double g_rhs[3] = {mM / X0, -1.0 / X0, mX / X0};
  r.rhs_se = quad(g_rhs);
  r.difference = r.lhs - r.rhs;
  const double g_diff[3] = {(1.0 - mM) / X0, 1.0 / X0, -mX / X0};
  r.difference_se = quad(g_diff);
  r.z = r.difference_se > 0.0 ? r.difference / r.difference_se : 0.0;
  return r;
}

MartingaleCheck verify_martingales(const EconomyParams& econ,
                                   const SimConfig& sim) {
  SimConfig s = sim;
  s.measure = Measure::P;
  s.horizon = econ.horizon_T;
  s.idiosyncratic = true;
  const PathEngine engine(econ, s);
  const std::size_t I = econ.investors.size();
  const double dt = engine.dt();
  const double m = engine.aggregates().mu_S;

  const auto acc = run_samples(engine, I + 1, [&](const Path& p, double* o) {
    double lm = 0.0;
    std::vector<double> lp(I, 0.0);
    for (std::size_t k = 0; k < engine.steps(); ++k) {
      const double vp = pos(p.v[k]);
      lm -= m * p.sqrt_v_dW[k] + 0.5 * m * m * vp * dt;
      for (std::size_t i = 0; i < I; ++i) {
        const auto& inv = econ.investors[i];
        const double g = inv.beta_Y / inv.tau;
        lp[i] -= g * std::sqrt(vp) * p.dZ[i][k] + 0.5 * g * g * vp * dt;
      }
    }
    o[0] = std::exp(lm);
    for (std::size_t i = 0; i < I; ++i) o[i + 1] = std::exp(lp[i]);
  });

  MartingaleCheck check;
  check.state_price = make_estimate(acc, 0, s, total_paths(engine));
  for (std::size_t i = 0; i < I; ++i) {
    check.densities.push_back(make_estimate(acc, i + 1, s, total_paths(engine)));
  }
  return check;
}

BudgetMartingaleReport verify_budget_martingale(const EconomyParams& econ,
                                                const SimConfig& sim,
                                                std::size_t investor,
                                                const Multipliers& mult,
                                                std::size_t inner,
                                                std::size_t checkpoints) {
  if (investor >= econ.investors.size()) {
    throw std::out_of_range("investor index out of range");
  }
  if (inner == 0 || checkpoints == 0) {
    throw std::invalid_argument("inner and checkpoints must be >= 1");
  }
  SimConfig s = sim;
  s.measure = Measure::P;
  s.horizon = econ.horizon_T;
  s.antithetic = false;
  s.scheme = Scheme::FullTruncationEuler;
  const PathEngine engine(econ, s);
  const auto& agg = engine.aggregates();
  const auto& vol = agg.vol;
  const auto& inv = econ.investors[investor];
  const auto coef = optimal_consumption_coeffs(agg, inv);
  const double T = econ.horizon_T;
  const std::size_t N = engine.steps();
  const double dt = engine.dt();
  const double k_min = vol.kappa_v - agg.mu_S * vol.sigma_v;
  const auto sol = solve(incomplete_coeffs(agg), T);
  const double c0 = mult.c0.at(investor);

  std::vector<std::size_t> at(checkpoints);
  for (std::size_t j = 0; j < checkpoints; ++j) {
    at[j] = static_cast<std::size_t>(
        std::llround(static_cast<double>(j * N) / static_cast<double>(checkpoints)));
  }

  // E^Qmin_t[int_t^T e^{-int_t^u r} (c_u - c_t) du] from state v_t.
  auto inner_value = [&](double v_start, std::size_t k_start,
                         std::uint64_t stream) {
    RandomStream rng(s.seed, kStreamInner, stream);
    const double sq = std::sqrt(dt);
    double total = 0.0;
    for (std::size_t m = 0; m < inner; ++m) {
      double v = v_start;
      double R = 0.0;
      double dc = 0.0;
      double integral = 0.0;
      double prev = 0.0;  // discounted increment at the left node
      for (std::size_t k = k_start; k < N; ++k) {
        const double vp = pos(v);
        const double dW = sq * rng.normal();
        const double sdw = std::sqrt(vp) * dW;
        dc += (coef.drift_const + coef.drift_v * vp) * dt +
              coef.diffusion * (sdw - agg.mu_S * vp * dt);
        const double v_next = v + (vol.mu_v + k_min * vp) * dt + vol.sigma_v * sdw;
        R += (agg.rate_const + 0.5 * agg.rate_v * (vp + pos(v_next))) * dt;
        const double cur = std::exp(-R) * dc;
        integral += 0.5 * dt * (prev + cur);
        prev = cur;
        v = v_next;
      }
      total += integral;
    }
    return total / static_cast<double>(inner);
  };

  const auto acc = reduce_chunks(
      s.n_paths, s.chunk_size, s.threads, MomentAccumulator(checkpoints),
      [&](std::size_t begin, std::size_t end, MomentAccumulator& a) {
        Path p;
        std::vector<double> out(checkpoints);
        for (std::size_t j = begin; j < end; ++j) {
          engine.simulate(j, p);
          const auto lx = engine.log_xi_min(p);
          const auto c = engine.consumption(p, investor, c0);
          std::vector<double> w(c.size());
          for (std::size_t k = 0; k < c.size(); ++k) {
            w[k] = std::exp(lx[k]) * c[k];
          }
          for (std::size_t q = 0; q < checkpoints; ++q) {
            const std::size_t k = at[q];
            const double vk = pos(p.v[k]);
            const double X =
                c[k] * annuity_price(sol, engine.time(k), vk, T) +
                inner_value(vk, k, j * checkpoints + q);
            out[q] = std::exp(lx[k]) * X + trapezoid(w, dt, 0, k);
          }
          a.add(out.data());
        }
      },
      [](MomentAccumulator& a, const MomentAccumulator& b) { a.merge(b); });

  BudgetMartingaleReport r;
  const double n = static_cast<double>(acc.count());
  for (std::size_t q = 0; q < checkpoints; ++q) {
    r.times.push_back(engine.time(at[q]));
    r.mean.push_back(acc.mean(q));
    r.se.push_back(acc.standard_error(q));
    const double var = acc.variance(q) + acc.variance(0) - 2.0 * acc.covariance(q, 0);
    const double se = std::sqrt(std::max(0.0, var) / n);
    const double d = acc.mean(q) - acc.mean(0);
    r.z.push_back(q == 0 ? 0.0 : (se > 0.0 ? d / se : 0.0));
    r.max_abs_z = std::max(r.max_abs_z, std::abs(r.z.back()));
  }
  return r;
}

}  // namespace icm
