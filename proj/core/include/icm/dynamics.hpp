#pragma once

// Monte Carlo simulation of the state variables under P, the minimal
// martingale measure and the U-forward measure.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "icm/model.hpp"
#include "icm/riccati.hpp"

namespace icm {

enum class Measure { P, Qmin, Forward };
enum class Scheme { FullTruncationEuler, ExactCir };

std::string to_string(Measure m);
std::string to_string(Scheme s);
Measure parse_measure(const std::string& name);
Scheme parse_scheme(const std::string& name);

struct SimConfig {
  std::size_t n_paths = 100000;
  std::size_t n_steps = 252;  // per unit of time
  std::uint64_t seed = 42;
  Measure measure = Measure::Qmin;
  double forward_U = 0.0;  // maturity defining Q^U
  Scheme scheme = Scheme::FullTruncationEuler;
  bool antithetic = true;  // W only; ignored by the exact scheme
  bool idiosyncratic = false;  // draw the Z_i increments
  double horizon = 0.0;  // 0: economy horizon, or forward_U under Q^U
  std::size_t chunk_size = 1024;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// One simulated path on the grid t_k = k dt, k = 0..n.
struct Path {
  std::vector<double> v;          // scheme state, n + 1
  std::vector<double> dW;         // simulation-measure increments, n
  std::vector<double> sqrt_v_dW;  // Ito increments sqrt(v_k^+) dW_k, n
  std::vector<double> int_v;      // trapezoid running integral of v^+, n + 1
  std::vector<std::vector<double>> dZ;  // per investor, n each
};

class PathEngine {
 public:
  /// Throws std::invalid_argument for an empty grid, a forward maturity
  /// outside (0, T], or a forward measure with the exact scheme.
  PathEngine(const EconomyParams& econ, const SimConfig& sim);

  const SimConfig& config() const noexcept { return sim_; }
  const EconomyParams& economy() const noexcept { return econ_; }
  const AggregateParams& aggregates() const noexcept { return agg_; }

  std::size_t steps() const noexcept { return steps_; }
  double dt() const noexcept { return dt_; }
  double horizon() const noexcept { return horizon_; }
  double time(std::size_t k) const noexcept {
    return k == steps_ ? horizon_ : dt_ * static_cast<double>(k);
  }

  /// Independent samples: antithetic pairs count once.
  std::size_t samples() const noexcept;
  std::size_t paths_per_sample() const noexcept;

  void simulate(std::size_t path_index, Path& out) const;

  /// Rebuilds v, sqrt_v_dW and int_v by the Euler scheme from the increments
  /// already stored in `path.dW` (length defines the grid, spacing dt()).
  void evolve(Path& path) const;

  /// P-measure Brownian increments in the form sqrt(v^+) dW^P.
  std::vector<double> physical_sqrt_v_dW(const Path& path) const;

  /// Running integral of the spot rate (incomplete or complete market).
  std::vector<double> rate_integral(const Path& path, bool rep = false) const;

  std::vector<double> log_xi_min(const Path& path) const;
  std::vector<double> log_pi(const Path& path, std::size_t investor) const;

  /// Optimal consumption started at c0, left-point Euler.
  std::vector<double> consumption(const Path& path, std::size_t investor,
                                  double c0) const;
  std::vector<double> income(const Path& path, std::size_t investor) const;
  std::vector<double> spanned_income(const Path& path,
                                     std::size_t investor) const;

  /// Drift coefficient of v (mu_v + k v) at step k under the simulation
  /// measure.
  double drift_slope(std::size_t k) const;

  /// theta_k with dW^P = dW - theta_k sqrt(v) dt.
  double theta(std::size_t k) const;

 private:
  void simulate_euler(std::size_t path_index, Path& out) const;
  void simulate_exact(std::size_t path_index, Path& out) const;
  void draw_idiosyncratic(std::size_t path_index, Path& out) const;
  void check_investor(std::size_t i) const;

  EconomyParams econ_;
  AggregateParams agg_;
  SimConfig sim_;
  std::size_t steps_ = 0;
  double dt_ = 0.0;
  double horizon_ = 0.0;
  std::vector<double> slope_;  // per step
  std::vector<double> theta_;  // per step
};

/// Exact transition of dv = (mu + k v) dt + sigma sqrt(v) dW over dt
/// (scaled non-central chi-square, Poisson mixture of gammas).
template <class Rng>
double cir_exact_step(double v, double mu, double k, double sigma, double dt,
                      Rng& rng);

/// Mean, variance and covariance of vector-valued samples (Chan's merge).
class MomentAccumulator {
 public:
  explicit MomentAccumulator(std::size_t dim = 1);

  void add(const double* x);
  void merge(const MomentAccumulator& other);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t count() const noexcept { return n_; }
  double mean(std::size_t i = 0) const { return mean_.at(i); }
  double covariance(std::size_t i, std::size_t j) const;
  double variance(std::size_t i = 0) const { return covariance(i, i); }
  double standard_error(std::size_t i = 0) const;

 private:
  std::size_t dim_;
  std::size_t n_ = 0;
  std::vector<double> mean_;
  std::vector<double> m2_;  // dim x dim co-moments
};

struct McEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t n_paths = 0;
  Measure measure = Measure::Qmin;
  std::uint64_t seed = 0;

  /// (value - target) / standard_error; 0 when both vanish.
  double z(double target) const;
};

McEstimate make_estimate(const MomentAccumulator& acc, std::size_t i,
                         const SimConfig& sim, std::size_t n_paths);

unsigned resolve_threads(unsigned requested) noexcept;

/// Splits [0, n_items) into chunks, runs body(begin, end, acc) on worker
/// threads and merges the per-chunk accumulators in chunk order, so the
/// result does not depend on the thread count.
template <class Acc, class Body, class Merge>
Acc reduce_chunks(std::size_t n_items, std::size_t chunk, unsigned threads,
                  const Acc& init, Body body, Merge merge) {
  chunk = std::max<std::size_t>(1, chunk);
  const std::size_t n_chunks = (n_items + chunk - 1) / chunk;
  std::vector<Acc> partial(n_chunks, init);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < n_chunks; c = next++) {
      const std::size_t begin = c * chunk;
      body(begin, std::min(n_items, begin + chunk), partial[c]);
    }
  };
  const unsigned n_threads = static_cast<unsigned>(std::min<std::size_t>(
      resolve_threads(threads), std::max<std::size_t>(1, n_chunks)));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  Acc total = init;
  for (const auto& p : partial) merge(total, p);
  return total;
}

/// Simulates every path and feeds f(path, out) (out has `dim` slots) into a
/// MomentAccumulator. Antithetic pairs are averaged into one sample.
template <class F>
MomentAccumulator run_samples(const PathEngine& engine, std::size_t dim,
                              F&& f) {
  const std::size_t per = engine.paths_per_sample();
  const auto& sim = engine.config();
  return reduce_chunks(
      engine.samples(), sim.chunk_size, sim.threads, MomentAccumulator(dim),
      [&](std::size_t begin, std::size_t end, MomentAccumulator& acc) {
        Path path;
        std::vector<double> out(dim), avg(dim);
        for (std::size_t s = begin; s < end; ++s) {
          std::fill(avg.begin(), avg.end(), 0.0);
          for (std::size_t j = 0; j < per; ++j) {
            engine.simulate(s * per + j, path);
            f(path, out.data());
            for (std::size_t d = 0; d < dim; ++d) avg[d] += out[d];
          }
          for (auto& x : avg) x /= static_cast<double>(per);
          acc.add(avg.data());
        }
      },
      [](MomentAccumulator& total, const MomentAccumulator& part) {
        total.merge(part);
      });
}

/// Materialized set of paths for diagnostics on small runs.
struct PathBundle {
  SimConfig config;
  std::vector<double> times;
  std::vector<Path> paths;
};

PathBundle simulate(const EconomyParams& econ, const SimConfig& sim);

template <class Rng>
double cir_exact_step(double v, double mu, double k, double sigma, double dt,
                      Rng& rng) {
  const double kappa = -k;
  const double s2 = sigma * sigma;
  // (1 - e^{-kappa dt}) / kappa, continuous at kappa = 0
  const double span =
      kappa == 0.0 ? dt : -std::expm1(-kappa * dt) / kappa;
  const double c = s2 * span / 4.0;
  const double d = 4.0 * mu / s2;
  const double lambda = std::max(v, 0.0) * std::exp(-kappa * dt) / c;
  long n = 0;
  if (lambda > 0.0) {
    std::poisson_distribution<long> pois(0.5 * lambda);
    n = pois(rng);
  }
  std::gamma_distribution<double> gam(0.5 * d + static_cast<double>(n), 2.0);
  return c * gam(rng);
}

}  // namespace icm
