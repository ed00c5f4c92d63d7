#include "icm/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "icm/rng.hpp"

namespace icm {

namespace {

constexpr std::uint32_t kStreamW = 1;
constexpr std::uint32_t kStreamZ = 2;
constexpr std::uint32_t kStreamCir = 3;

inline double pos(double x) noexcept { return x > 0.0 ? x : 0.0; }

void fill_int_v(Path& p, double dt) {
  const std::size_t n = p.v.size() - 1;
  p.int_v.resize(n + 1);
  p.int_v[0] = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    p.int_v[k + 1] = p.int_v[k] + 0.5 * dt * (pos(p.v[k]) + pos(p.v[k + 1]));
  }
}

}  // namespace

std::string to_string(Measure m) {
  switch (m) {
    case Measure::P: return "P";
    case Measure::Qmin: return "Qmin";
    case Measure::Forward: return "QU";
  }
  return "?";
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::FullTruncationEuler: return "euler";
    case Scheme::ExactCir: return "exact";
  }
  return "?";
}

Measure parse_measure(const std::string& name) {
  if (name == "P") return Measure::P;
  if (name == "Qmin") return Measure::Qmin;
  if (name == "QU") return Measure::Forward;
  throw std::invalid_argument("unknown measure '" + name + "'");
}

Scheme parse_scheme(const std::string& name) {
  if (name == "euler") return Scheme::FullTruncationEuler;
  if (name == "exact") return Scheme::ExactCir;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

PathEngine::PathEngine(const EconomyParams& econ, const SimConfig& sim)
    : econ_(econ), agg_(derive_aggregates(econ)), sim_(sim) {
  if (sim.n_paths == 0) throw std::invalid_argument("n_paths must be >= 1");
  if (sim.n_steps == 0) throw std::invalid_argument("n_steps must be >= 1");
  if (econ.investors.empty()) {
    throw std::invalid_argument("economy has no investors");
  }

  horizon_ = sim.horizon > 0.0 ? sim.horizon : econ.horizon_T;
  if (sim.measure == Measure::Forward) {
    if (!(sim.forward_U > 0.0) || sim.forward_U > econ.horizon_T) {
      throw std::invalid_argument("forward maturity U must lie in (0, T]");
    }
    if (sim.scheme == Scheme::ExactCir) {
      throw std::invalid_argument(
          "the exact scheme does not support the forward measure");
    }
    if (sim.horizon <= 0.0) horizon_ = sim.forward_U;
    if (horizon_ > sim.forward_U * (1.0 + 1e-12)) {
      throw std::invalid_argument("forward measure only defined up to U");
    }
  }
  if (!(horizon_ > 0.0)) throw std::invalid_argument("horizon must be > 0");

  steps_ = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::llround(static_cast<double>(sim.n_steps) * horizon_)));
  dt_ = horizon_ / static_cast<double>(steps_);

  const double k_min = agg_.vol.kappa_v - agg_.mu_S * agg_.vol.sigma_v;
  slope_.assign(steps_, agg_.vol.kappa_v);
  theta_.assign(steps_, 0.0);
  if (sim.measure == Measure::Qmin) {
    slope_.assign(steps_, k_min);
    theta_.assign(steps_, agg_.mu_S);
  } else if (sim.measure == Measure::Forward) {
    const auto sol = solve(incomplete_coeffs(agg_), sim.forward_U);
    const double sv = agg_.vol.sigma_v;
    for (std::size_t k = 0; k < steps_; ++k) {
      const double b = sol.b(std::max(0.0, sim.forward_U - time(k)));
      slope_[k] = k_min + sv * sv * b;
      theta_[k] = agg_.mu_S - b * sv;
    }
  }
}

std::size_t PathEngine::paths_per_sample() const noexcept {
  return sim_.antithetic && sim_.scheme == Scheme::FullTruncationEuler ? 2 : 1;
}

std::size_t PathEngine::samples() const noexcept {
  const std::size_t per = paths_per_sample();
  return (sim_.n_paths + per - 1) / per;
}

double PathEngine::drift_slope(std::size_t k) const { return slope_.at(k); }
double PathEngine::theta(std::size_t k) const { return theta_.at(k); }

void PathEngine::simulate(std::size_t path_index, Path& out) const {
  if (sim_.scheme == Scheme::ExactCir) {
    simulate_exact(path_index, out);
  } else {
    simulate_euler(path_index, out);
  }
  if (sim_.idiosyncratic) {
    draw_idiosyncratic(path_index, out);
  } else {
    out.dZ.clear();
  }
}

void PathEngine::simulate_euler(std::size_t path_index, Path& out) const {
  const std::size_t per = paths_per_sample();
  RandomStream rng(sim_.seed, kStreamW, path_index / per);
  const double sign = (per == 2 && path_index % 2 == 1) ? -1.0 : 1.0;
  const double sq = std::sqrt(dt_);
  out.dW.resize(steps_);
  for (std::size_t k = 0; k < steps_; ++k) out.dW[k] = sign * sq * rng.normal();
  evolve(out);
}

// Full truncation; the affine drift is integrated exactly over each step.
void PathEngine::evolve(Path& p) const {
  const std::size_t n = p.dW.size();
  if (n > steps_) throw std::invalid_argument("evolve: grid longer than engine");
  const auto& vol = agg_.vol;
  p.v.resize(n + 1);
  p.sqrt_v_dW.resize(n);
  p.v[0] = vol.v0;
  for (std::size_t k = 0; k < n; ++k) {
    const double vp = pos(p.v[k]);
    const double s = std::sqrt(vp) * p.dW[k];
    p.sqrt_v_dW[k] = s;
    const double a = slope_[k];
    const double span = a == 0.0 ? dt_ : std::expm1(a * dt_) / a;
    p.v[k + 1] = p.v[k] + (vol.mu_v + a * vp) * span + vol.sigma_v * s;
  }
  fill_int_v(p, dt_);
}

void PathEngine::simulate_exact(std::size_t path_index, Path& out) const {
  RandomStream rng(sim_.seed, kStreamCir, path_index);
  const auto& vol = agg_.vol;
  out.v.resize(steps_ + 1);
  out.dW.resize(steps_);
  out.sqrt_v_dW.resize(steps_);
  out.v[0] = vol.v0;
  for (std::size_t k = 0; k < steps_; ++k) {
    out.v[k + 1] =
        cir_exact_step(out.v[k], vol.mu_v, slope_[k], vol.sigma_v, dt_, rng);
  }
  fill_int_v(out, dt_);
  // Implied Ito increments from the integrated dynamics.
  for (std::size_t k = 0; k < steps_; ++k) {
    const double iv = out.int_v[k + 1] - out.int_v[k];
    const double s =
        (out.v[k + 1] - out.v[k] - vol.mu_v * dt_ - slope_[k] * iv) /
        vol.sigma_v;
    out.sqrt_v_dW[k] = s;
    out.dW[k] = out.v[k] > 0.0 ? s / std::sqrt(out.v[k]) : 0.0;
  }
}

void PathEngine::draw_idiosyncratic(std::size_t path_index, Path& out) const {
  RandomStream rng(sim_.seed, kStreamZ, path_index);
  const std::size_t I = econ_.investors.size();
  const double sq = std::sqrt(dt_);
  out.dZ.resize(I);
  for (auto& z : out.dZ) z.resize(steps_);
  for (std::size_t k = 0; k < steps_; ++k) {
    for (std::size_t i = 0; i < I; ++i) out.dZ[i][k] = sq * rng.normal();
  }
}

void PathEngine::check_investor(std::size_t i) const {
  if (i >= econ_.investors.size()) {
    throw std::out_of_range("investor index out of range");
  }
}

std::vector<double> PathEngine::physical_sqrt_v_dW(const Path& p) const {
  const std::size_t n = p.sqrt_v_dW.size();
  std::vector<double> out(n);
  const bool exact = sim_.scheme == Scheme::ExactCir;
  for (std::size_t k = 0; k < n; ++k) {
    const double var_dt =
        exact ? p.int_v[k + 1] - p.int_v[k] : pos(p.v[k]) * dt_;
    out[k] = p.sqrt_v_dW[k] - theta_[k] * var_dt;
  }
  return out;
}

std::vector<double> PathEngine::rate_integral(const Path& p, bool rep) const {
  const double rv = rep ? agg_.rate_v_rep : agg_.rate_v;
  std::vector<double> out(p.int_v.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = agg_.rate_const * dt_ * static_cast<double>(k) + rv * p.int_v[k];
  }
  return out;
}

std::vector<double> PathEngine::log_xi_min(const Path& p) const {
  const auto R = rate_integral(p);
  const auto dWp = physical_sqrt_v_dW(p);
  const double m = agg_.mu_S;
  std::vector<double> out(R.size());
  double ito = 0.0;
  out[0] = 0.0;
  for (std::size_t k = 0; k < dWp.size(); ++k) {
    ito += dWp[k];
    out[k + 1] = -R[k + 1] - m * ito - 0.5 * m * m * p.int_v[k + 1];
  }
  return out;
}

std::vector<double> PathEngine::log_pi(const Path& p, std::size_t i) const {
  check_investor(i);
  if (p.dZ.size() <= i) {
    throw std::logic_error("log_pi needs idiosyncratic increments");
  }
  const auto& inv = econ_.investors[i];
  const double g = inv.beta_Y / inv.tau;
  std::vector<double> out(p.v.size());
  double ito = 0.0;
  out[0] = 0.0;
  for (std::size_t k = 0; k + 1 < p.v.size(); ++k) {
    ito += std::sqrt(pos(p.v[k])) * p.dZ[i][k];
    out[k + 1] = -g * ito - 0.5 * g * g * p.int_v[k + 1];
  }
  return out;
}

std::vector<double> PathEngine::consumption(const Path& p, std::size_t i,
                                            double c0) const {
  check_investor(i);
  const auto& inv = econ_.investors[i];
  const double tau = inv.tau;
  const double dc = tau * agg_.rate_const - inv.mu_Y;
  const double dv = tau * agg_.rate_v + 0.5 * tau * agg_.mu_S * agg_.mu_S +
                    0.5 * inv.beta_Y * inv.beta_Y / tau - inv.kappa_Y;
  const double diff = tau * agg_.mu_S - inv.sigma_Y;
  const auto dWp = physical_sqrt_v_dW(p);
  std::vector<double> out(p.v.size());
  out[0] = c0;
  for (std::size_t k = 0; k < dWp.size(); ++k) {
    out[k + 1] = out[k] + (dc + dv * pos(p.v[k])) * dt_ + diff * dWp[k];
  }
  return out;
}

std::vector<double> PathEngine::income(const Path& p, std::size_t i) const {
  check_investor(i);
  const auto& inv = econ_.investors[i];
  const auto dWp = physical_sqrt_v_dW(p);
  const bool with_z = p.dZ.size() > i;
  if (!with_z && inv.beta_Y != 0.0) {
    throw std::logic_error("income needs idiosyncratic increments");
  }
  std::vector<double> out(p.v.size());
  out[0] = inv.Y0;
  for (std::size_t k = 0; k < dWp.size(); ++k) {
    const double vp = pos(p.v[k]);
    const double z = with_z ? std::sqrt(vp) * p.dZ[i][k] : 0.0;
    out[k + 1] = out[k] + (inv.mu_Y + inv.kappa_Y * vp) * dt_ +
                 inv.sigma_Y * dWp[k] + inv.beta_Y * z;
  }
  return out;
}

std::vector<double> PathEngine::spanned_income(const Path& p,
                                               std::size_t i) const {
  check_investor(i);
  const auto& inv = econ_.investors[i];
  const double kv = inv.kappa_Y - 0.5 * inv.beta_Y * inv.beta_Y / inv.tau;
  const auto dWp = physical_sqrt_v_dW(p);
  std::vector<double> out(p.v.size());
  out[0] = inv.Y0;
  for (std::size_t k = 0; k < dWp.size(); ++k) {
    out[k + 1] = out[k] + (inv.mu_Y + kv * pos(p.v[k])) * dt_ +
                 inv.sigma_Y * dWp[k];
  }
  return out;
}

MomentAccumulator::MomentAccumulator(std::size_t dim)
    : dim_(dim), mean_(dim, 0.0), m2_(dim * dim, 0.0) {}

void MomentAccumulator::add(const double* x) {
  ++n_;
  const double inv_n = 1.0 / static_cast<double>(n_);
  std::vector<double> before(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    before[i] = x[i] - mean_[i];
    mean_[i] += before[i] * inv_n;
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      m2_[i * dim_ + j] += before[i] * (x[j] - mean_[j]);
    }
  }
}

void MomentAccumulator::merge(const MomentAccumulator& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(o.n_);
  const double n = na + nb;
  std::vector<double> delta(dim_);
  for (std::size_t i = 0; i < dim_; ++i) delta[i] = o.mean_[i] - mean_[i];
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      m2_[i * dim_ + j] +=
          o.m2_[i * dim_ + j] + delta[i] * delta[j] * na * nb / n;
    }
  }
  for (std::size_t i = 0; i < dim_; ++i) mean_[i] += delta[i] * nb / n;
  n_ += o.n_;
}

double MomentAccumulator::covariance(std::size_t i, std::size_t j) const {
  if (i >= dim_ || j >= dim_) throw std::out_of_range("moment index");
  if (n_ < 2) return 0.0;
  return m2_[i * dim_ + j] / static_cast<double>(n_ - 1);
}

double MomentAccumulator::standard_error(std::size_t i) const {
  if (n_ < 2) return 0.0;
  return std::sqrt(std::max(0.0, variance(i)) / static_cast<double>(n_));
}

double McEstimate::z(double target) const {
  const double d = value - target;
  if (standard_error > 0.0) return d / standard_error;
  return d == 0.0 ? 0.0 : std::copysign(INFINITY, d);
}

McEstimate make_estimate(const MomentAccumulator& acc, std::size_t i,
                         const SimConfig& sim, std::size_t n_paths) {
  McEstimate e;
  e.value = acc.mean(i);
  e.standard_error = acc.standard_error(i);
  e.n_paths = n_paths;
  e.measure = sim.measure;
  e.seed = sim.seed;
  return e;
}

unsigned resolve_threads(unsigned requested) noexcept {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

PathBundle simulate(const EconomyParams& econ, const SimConfig& sim) {
  const PathEngine engine(econ, sim);
  PathBundle bundle;
  bundle.config = sim;
  bundle.times.resize(engine.steps() + 1);
  for (std::size_t k = 0; k <= engine.steps(); ++k) {
    bundle.times[k] = engine.time(k);
  }
  const std::size_t n = engine.samples() * engine.paths_per_sample();
  bundle.paths.resize(n);
  reduce_chunks(
      n, sim.chunk_size, sim.threads, 0,
      [&](std::size_t begin, std::size_t end, int&) {
        for (std::size_t p = begin; p < end; ++p) {
          engine.simulate(p, bundle.paths[p]);
        }
      },
      [](int&, int) {});
  return bundle;
}

}  // namespace icm
