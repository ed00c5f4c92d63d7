#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "icm/dynamics.hpp"
#include "icm/rng.hpp"
#include "icm/verification.hpp"
#include "random_economy.hpp"

namespace {

using testing_support::heterogeneous_economy;
using testing_support::reference_economy;

icm::SimConfig small(icm::Measure m = icm::Measure::P) {
  icm::SimConfig s;
  s.n_paths = 2000;
  s.n_steps = 252;
  s.measure = m;
  return s;
}

double cir_mean(double v0, double mu, double k, double t) {
  return v0 * std::exp(k * t) + mu * std::expm1(k * t) / k;
}

TEST(Engine, RejectsBadConfig) {
  const auto e = reference_economy(2);
  auto s = small();
  s.n_paths = 0;
  EXPECT_THROW(icm::PathEngine(e, s), std::invalid_argument);
  s = small();
  s.n_steps = 0;
  EXPECT_THROW(icm::PathEngine(e, s), std::invalid_argument);
  s = small(icm::Measure::Forward);
  s.forward_U = 1.5;
  EXPECT_THROW(icm::PathEngine(e, s), std::invalid_argument);
  s.forward_U = 0.5;
  s.scheme = icm::Scheme::ExactCir;
  EXPECT_THROW(icm::PathEngine(e, s), std::invalid_argument);
}

TEST(Engine, Grid) {
  auto s = small(icm::Measure::Forward);
  s.forward_U = 0.5;
  const icm::PathEngine eng(reference_economy(2), s);
  EXPECT_EQ(eng.horizon(), 0.5);
  EXPECT_EQ(eng.steps(), 126u);
  EXPECT_EQ(eng.time(eng.steps()), 0.5);
  EXPECT_EQ(eng.paths_per_sample(), 2u);
  EXPECT_EQ(eng.samples(), 1000u);
}

TEST(Engine, MeasureDrifts) {
  const auto e = reference_economy(2);
  const auto agg = icm::derive_aggregates(e);
  const icm::PathEngine p(e, small(icm::Measure::P));
  const icm::PathEngine q(e, small(icm::Measure::Qmin));
  EXPECT_EQ(p.drift_slope(0), agg.vol.kappa_v);
  EXPECT_EQ(p.theta(0), 0.0);
  EXPECT_DOUBLE_EQ(q.drift_slope(0),
                   agg.vol.kappa_v - agg.mu_S * agg.vol.sigma_v);
  EXPECT_EQ(q.theta(0), agg.mu_S);
}

TEST(Engine, Deterministic) {
  const icm::PathEngine eng(heterogeneous_economy(), small());
  icm::Path a, b;
  eng.simulate(17, a);
  eng.simulate(17, b);
  EXPECT_EQ(a.v, b.v);
  EXPECT_EQ(a.dW, b.dW);
  auto s = small();
  s.n_paths = 8;
  s.idiosyncratic = true;
  const auto x = icm::simulate(heterogeneous_economy(), s);
  const auto y = icm::simulate(heterogeneous_economy(), s);
  ASSERT_EQ(x.paths.size(), 8u);
  for (std::size_t k = 0; k < x.paths.size(); ++k) {
    EXPECT_EQ(x.paths[k].v, y.paths[k].v);
    EXPECT_EQ(x.paths[k].dZ, y.paths[k].dZ);
  }
}

TEST(Engine, Antithetic) {
  const icm::PathEngine eng(reference_economy(2), small());
  icm::Path a, b;
  eng.simulate(4, a);
  eng.simulate(5, b);
  for (std::size_t k = 0; k < a.dW.size(); ++k) EXPECT_EQ(a.dW[k], -b.dW[k]);
}

TEST(Engine, ThreadCountDoesNotChangeEstimates) {
  auto s = small(icm::Measure::Qmin);
  s.chunk_size = 64;
  s.threads = 1;
  const auto one = icm::mc_bond_price(reference_economy(2), 1.0, s);
  s.threads = 4;
  const auto four = icm::mc_bond_price(reference_economy(2), 1.0, s);
  EXPECT_EQ(one.value, four.value);
  EXPECT_EQ(one.standard_error, four.standard_error);
}

TEST(Engine, NoiseFreePathFollowsMean) {
  const auto e = reference_economy(2);
  const icm::PathEngine eng(e, small());
  icm::Path p;
  p.dW.assign(eng.steps(), 0.0);
  eng.evolve(p);
  for (std::size_t k = 0; k <= eng.steps(); k += 21) {
    EXPECT_NEAR(p.v[k], cir_mean(1.0, 0.05, -0.7, eng.time(k)), 1e-13);
  }
}

TEST(Engine, FullTruncation) {
  const icm::PathEngine eng(reference_economy(2), small());
  icm::Path p;
  p.dW.assign(eng.steps(), 0.0);
  p.dW[0] = 10.0;  // sigma_v < 0 pushes v far below zero
  eng.evolve(p);
  ASSERT_LT(p.v[1], 0.0);
  EXPECT_EQ(p.sqrt_v_dW[1], 0.0);
  EXPECT_EQ(p.int_v[1] - p.int_v[0], 0.5 * eng.dt() * 1.0);
  // Drift at v^+ = 0 is mu_v alone.
  EXPECT_GT(p.v[2], p.v[1]);
}

TEST(Engine, PhysicalMeanOfV) {
  for (auto scheme : {icm::Scheme::FullTruncationEuler, icm::Scheme::ExactCir}) {
    auto s = small();
    s.n_paths = 20000;
    s.scheme = scheme;
    const icm::PathEngine eng(reference_economy(2), s);
    const auto acc = icm::run_samples(eng, 1, [](const icm::Path& p, double* o) {
      o[0] = p.v.back();
    });
    EXPECT_NEAR(acc.mean(), cir_mean(1.0, 0.05, -0.7, 1.0),
                3.0 * acc.standard_error())
        << icm::to_string(scheme);
  }
}

TEST(Engine, GirsanovDrift) {
  // Least-squares slope of the v increments on v, common random numbers.
  const auto e = reference_economy(2);
  const auto agg = icm::derive_aggregates(e);
  auto slope = [&](icm::Measure m) {
    auto s = small(m);
    s.antithetic = false;
    const icm::PathEngine eng(e, s);
    double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
    icm::Path p;
    for (std::size_t j = 0; j < s.n_paths; ++j) {
      eng.simulate(j, p);
      for (std::size_t k = 0; k < eng.steps(); ++k) {
        const double x = p.v[k], y = (p.v[k + 1] - p.v[k]) / eng.dt();
        sx += x, sy += y, sxx += x * x, sxy += x * y, n += 1;
      }
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  const double diff = slope(icm::Measure::Qmin) - slope(icm::Measure::P);
  EXPECT_NEAR(diff, -agg.mu_S * agg.vol.sigma_v, 0.02);
}

TEST(Engine, DensitiesPositive) {
  auto s = small();
  s.n_paths = 50;
  s.idiosyncratic = true;
  const auto e = heterogeneous_economy();
  const icm::PathEngine eng(e, s);
  icm::Path p;
  for (std::size_t j = 0; j < s.n_paths; ++j) {
    eng.simulate(j, p);
    for (double x : eng.log_xi_min(p)) EXPECT_TRUE(std::isfinite(x));
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (double x : eng.log_pi(p, i)) EXPECT_TRUE(std::isfinite(x));
    }
  }
}

TEST(Engine, WeakBiasDecays) {
  // Coupled grids 4, 8, 16, 32 from shared increments; successive bond price
  // differences shrink by a factor between first and second order.
  const auto e = reference_economy(2);
  const std::size_t fine = 32;
  std::vector<icm::PathEngine> engines;
  for (std::size_t n = 4; n <= fine; n *= 2) {
    auto s = small(icm::Measure::Qmin);
    s.n_steps = n;
    engines.emplace_back(e, s);
  }
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal(0.0, std::sqrt(1.0 / fine));
  icm::MomentAccumulator acc(3);
  icm::Path p;
  std::vector<double> dw(fine);
  for (int j = 0; j < 100000; ++j) {
    for (auto& x : dw) x = normal(rng);
    double price[4];
    for (std::size_t l = 0; l < engines.size(); ++l) {
      const std::size_t n = engines[l].steps(), m = fine / n;
      p.dW.assign(n, 0.0);
      for (std::size_t k = 0; k < fine; ++k) p.dW[k / m] += dw[k];
      engines[l].evolve(p);
      price[l] = std::exp(-engines[l].rate_integral(p).back());
    }
    const double d[3] = {price[0] - price[1], price[1] - price[2],
                         price[2] - price[3]};
    acc.add(d);
  }
  for (std::size_t l = 0; l + 1 < 3; ++l) {
    ASSERT_GT(acc.mean(l + 1), 3.0 * acc.standard_error(l + 1));
    const double ratio = acc.mean(l) / acc.mean(l + 1);
    EXPECT_GE(ratio, 1.6);
    EXPECT_LE(ratio, 4.5);
  }
}

TEST(ExactStep, Moments) {
  const double v = 0.5, mu = 0.05, k = -0.7, sigma = -0.3, dt = 0.25;
  const double e = std::exp(k * dt);
  const double mean = cir_mean(v, mu, k, dt);
  const double var = v * sigma * sigma * e * (1 - e) / -k +
                     mu * sigma * sigma * (1 - e) * (1 - e) / (2 * k * k);
  icm::RandomStream rng(3, 99, 0);
  icm::MomentAccumulator acc(1);
  for (int n = 0; n < 100000; ++n) {
    const double x = icm::cir_exact_step(v, mu, k, sigma, dt, rng);
    ASSERT_GE(x, 0.0);
    acc.add(&x);
  }
  EXPECT_NEAR(acc.mean(), mean, 4 * acc.standard_error());
  EXPECT_NEAR(acc.variance(), var, 0.02 * var);
}

TEST(Moments, MergeEqualsSequential) {
  icm::MomentAccumulator all(2), left(2), right(2);
  for (int k = 0; k < 100; ++k) {
    const double x[2] = {std::sin(k * 1.0), k * 0.01};
    all.add(x);
    (k < 37 ? left : right).add(x);
  }
  left.merge(right);
  EXPECT_EQ(left.count(), 100u);
  EXPECT_NEAR(left.mean(0), all.mean(0), 1e-15);
  EXPECT_NEAR(left.covariance(0, 1), all.covariance(0, 1), 1e-15);
  EXPECT_NEAR(left.variance(1), all.variance(1), 1e-15);
}

TEST(Moments, KnownValues) {
  icm::MomentAccumulator acc(1);
  for (double x : {1.0, 2.0, 3.0, 4.0}) acc.add(&x);
  EXPECT_DOUBLE_EQ(acc.mean(), 2.5);
  EXPECT_DOUBLE_EQ(acc.variance(), 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(acc.standard_error(), std::sqrt(5.0 / 12.0));
}

TEST(Estimate, ZScore) {
  icm::McEstimate e;
  e.value = 1.0;
  e.standard_error = 0.5;
  EXPECT_EQ(e.z(0.0), 2.0);
  e.standard_error = 0.0;
  EXPECT_EQ(e.z(1.0), 0.0);
  EXPECT_TRUE(std::isinf(e.z(0.0)));
}

TEST(Reduce, ChunkOrder) {
  auto body = [](std::size_t b, std::size_t e, std::vector<std::size_t>& acc) {
    for (std::size_t i = b; i < e; ++i) acc.push_back(i);
  };
  auto merge = [](std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    a.insert(a.end(), b.begin(), b.end());
  };
  const auto out = icm::reduce_chunks(1000, 7, 4, std::vector<std::size_t>{},
                                      body, merge);
  ASSERT_EQ(out.size(), 1000u);
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], i);
}

TEST(Names, RoundTrip) {
  for (auto m : {icm::Measure::P, icm::Measure::Qmin, icm::Measure::Forward}) {
    EXPECT_EQ(icm::parse_measure(icm::to_string(m)), m);
  }
  for (auto s : {icm::Scheme::FullTruncationEuler, icm::Scheme::ExactCir}) {
    EXPECT_EQ(icm::parse_scheme(icm::to_string(s)), s);
  }
  EXPECT_THROW(icm::parse_scheme("milstein"), std::invalid_argument);
}

}  // namespace
