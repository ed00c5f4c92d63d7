#include "icm/terminal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coupled_grids.hpp"
#include "icm/quadrature.hpp"

namespace icm {

namespace {

constexpr std::uint32_t kStreamTerminalW = 41;

inline double pos(double x) noexcept { return x > 0.0 ? x : 0.0; }

// log xi_T and sum_i Y~_iT along one P path (left-point sums).
struct TerminalPathValues {
  double log_xi = 0.0;
  std::vector<double> spanned;  // Y~_iT per investor
};

void terminal_values(const PathEngine& engine, const std::vector<double>& mpr,
                     const Path& p, TerminalPathValues& out) {
  const double dt = engine.dt();
  const auto& econ = engine.economy();
  double lx = 0.0;
  for (std::size_t k = 0; k + 1 < p.v.size(); ++k) {
    lx -= mpr[k] * p.sqrt_v_dW[k] + 0.5 * mpr[k] * mpr[k] * pos(p.v[k]) * dt;
  }
  out.log_xi = lx;
  out.spanned.resize(econ.investors.size());
  for (std::size_t i = 0; i < econ.investors.size(); ++i) {
    out.spanned[i] = engine.spanned_income(p, i).back();
  }
}

std::vector<double> mpr_grid(const TerminalEquilibrium& eq,
                             const PathEngine& engine) {
  std::vector<double> m(engine.steps());
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = eq.mu_S(engine.time(k));
  return m;
}

// Budget multipliers from E^Q[tau_i log xi_T + Y~_iT] with Q weights
// proportional to xi_T.
struct BudgetSums {
  double weight = 0.0;
  std::vector<double> weighted;  // per investor
};

std::vector<double> solve_log_tau_alpha(const EconomyParams& econ,
                                        const BudgetSums& sums) {
  std::vector<double> out;
  for (std::size_t i = 0; i < econ.investors.size(); ++i) {
    const auto& inv = econ.investors[i];
    const double expectation = sums.weighted[i] / sums.weight;
    out.push_back(-(inv.X0 + expectation) / inv.tau);
  }
  return out;
}

double clearing_residual(const EconomyParams& econ,
                         const std::vector<double>& log_tau_alpha,
                         const TerminalPathValues& pv) {
  double sum = 0.0;
  for (std::size_t i = 0; i < econ.investors.size(); ++i) {
    const double tau = econ.investors[i].tau;
    sum += -tau * (log_tau_alpha[i] + pv.log_xi) - pv.spanned[i];
  }
  return std::abs(sum);
}

}  // namespace

double terminal_mpr(const RiccatiSolution& sol, const AggregateParams& agg,
                    double t, double T) {
  if (t < 0.0 || t > T) {
    throw std::invalid_argument("terminal_mpr: t must lie in [0, T]");
  }
  return agg.mu_S - sol.b(T - t) * agg.vol.sigma_v;
}

TerminalEquilibrium::TerminalEquilibrium(const EconomyParams& econ)
    : agg_(derive_aggregates(econ)),
      T_(econ.horizon_T),
      sol_(solve(incomplete_coeffs(agg_), econ.horizon_T)) {}

double TerminalEquilibrium::mpr_value(double t, double v) const {
  return mu_S(t) * std::sqrt(v);
}

double TerminalEquilibrium::martingale_loading(double t,
                                               double nodes_per_year) const {
  const double ts = agg_.tau_sigma;
  const double kv = agg_.vol.kappa_v;
  const double tail = integrate(
      [&](double u) {
        const double m = mu_S(u);
        const double g = 0.5 * ts * m * m - agg_.kappa_E +
                         0.5 * agg_.beta_weighted;
        return g * std::exp(kv * (u - t));
      },
      t, T_, nodes_per_year);
  return agg_.vol.sigma_v * (ts * sol_.b(T_ - t) - tail);
}

TerminalClearingReport verify_terminal_clearing(const EconomyParams& econ,
                                                const SimConfig& sim) {
  const TerminalEquilibrium eq(econ);
  SimConfig s = sim;
  s.measure = Measure::P;
  s.horizon = econ.horizon_T;
  s.idiosyncratic = false;
  const PathEngine engine(econ, s);
  const auto mpr = mpr_grid(eq, engine);
  const std::size_t I = econ.investors.size();
  const std::size_t n_paths = engine.samples() * engine.paths_per_sample();

  BudgetSums init;
  init.weighted.assign(I, 0.0);
  const auto sums = reduce_chunks(
      n_paths, s.chunk_size, s.threads, init,
      [&](std::size_t begin, std::size_t end, BudgetSums& acc) {
        Path p;
        TerminalPathValues pv;
        for (std::size_t j = begin; j < end; ++j) {
          engine.simulate(j, p);
          terminal_values(engine, mpr, p, pv);
          const double w = std::exp(pv.log_xi);
          acc.weight += w;
          for (std::size_t i = 0; i < I; ++i) {
            acc.weighted[i] +=
                w * (econ.investors[i].tau * pv.log_xi + pv.spanned[i]);
          }
        }
      },
      [](BudgetSums& a, const BudgetSums& b) {
        a.weight += b.weight;
        for (std::size_t i = 0; i < a.weighted.size(); ++i) {
          a.weighted[i] += b.weighted[i];
        }
      });

  TerminalClearingReport report;
  report.log_tau_alpha = solve_log_tau_alpha(econ, sums);
  report.n_paths = n_paths;
  report.n_steps = engine.steps();
  report.dt = engine.dt();
  report.max_residual = reduce_chunks(
      n_paths, s.chunk_size, s.threads, 0.0,
      [&](std::size_t begin, std::size_t end, double& worst) {
        Path p;
        TerminalPathValues pv;
        for (std::size_t j = begin; j < end; ++j) {
          engine.simulate(j, p);
          terminal_values(engine, mpr, p, pv);
          worst = std::max(worst,
                           clearing_residual(econ, report.log_tau_alpha, pv));
        }
      },
      [](double& a, double b) { a = std::max(a, b); });
  for (std::size_t k = 0; k <= engine.steps(); ++k) {
    report.max_loading = std::max(
        report.max_loading, std::abs(eq.martingale_loading(engine.time(k))));
  }
  return report;
}

ConvergenceStudy terminal_clearing_convergence(const EconomyParams& econ,
                                               const SimConfig& sim,
                                               std::size_t levels) {
  const TerminalEquilibrium eq(econ);
  SimConfig s = sim;
  s.measure = Measure::P;
  s.horizon = econ.horizon_T;
  s.idiosyncratic = false;
  const detail::CoupledGrids grids(econ, s, levels);
  const std::size_t I = econ.investors.size();
  std::vector<std::vector<double>> mpr;
  for (const auto& e : grids.engines) mpr.push_back(mpr_grid(eq, e));

  // Pass one: budget sums per level; pass two: residuals.
  std::vector<BudgetSums> init(levels);
  for (auto& b : init) b.weighted.assign(I, 0.0);
  auto run_level_paths = [&](auto&& visit) {
    return [&, visit](std::size_t begin, std::size_t end, auto& acc) {
      std::vector<double> fine;
      Path p;
      TerminalPathValues pv;
      for (std::size_t j = begin; j < end; ++j) {
        RandomStream rng(s.seed, kStreamTerminalW, j);
        grids.draw(rng, fine);
        for (std::size_t l = 0; l < levels; ++l) {
          grids.coarsen(fine, l, p.dW);
          grids.engines[l].evolve(p);
          terminal_values(grids.engines[l], mpr[l], p, pv);
          visit(l, pv, acc);
        }
      }
    };
  };

  const auto sums = reduce_chunks(
      s.n_paths, s.chunk_size, s.threads, init,
      run_level_paths([&](std::size_t l, const TerminalPathValues& pv,
                          std::vector<BudgetSums>& acc) {
        const double w = std::exp(pv.log_xi);
        acc[l].weight += w;
        for (std::size_t i = 0; i < I; ++i) {
          acc[l].weighted[i] +=
              w * (econ.investors[i].tau * pv.log_xi + pv.spanned[i]);
        }
      }),
      [](std::vector<BudgetSums>& a, const std::vector<BudgetSums>& b) {
        for (std::size_t l = 0; l < a.size(); ++l) {
          a[l].weight += b[l].weight;
          for (std::size_t i = 0; i < a[l].weighted.size(); ++i) {
            a[l].weighted[i] += b[l].weighted[i];
          }
        }
      });

  std::vector<std::vector<double>> lta;
  for (const auto& b : sums) lta.push_back(solve_log_tau_alpha(econ, b));

  auto errors = reduce_chunks(
      s.n_paths, s.chunk_size, s.threads, std::vector<double>(levels, 0.0),
      run_level_paths([&](std::size_t l, const TerminalPathValues& pv,
                          std::vector<double>& worst) {
        worst[l] = std::max(worst[l], clearing_residual(econ, lta[l], pv));
      }),
      [](std::vector<double>& a, const std::vector<double>& b) {
        for (std::size_t l = 0; l < a.size(); ++l) a[l] = std::max(a[l], b[l]);
      });
  return detail::finish_study(grids, std::move(errors));
}

}  // namespace icm
