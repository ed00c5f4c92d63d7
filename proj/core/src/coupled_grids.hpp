#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "icm/dynamics.hpp"
#include "icm/rng.hpp"
#include "icm/verification.hpp"

namespace icm::detail {

// Builds the Brownian increments of every level from the finest ones.
struct CoupledGrids {
  std::vector<PathEngine> engines;  // coarsest first
  std::size_t fine_steps = 0;
  double fine_dt = 0.0;

  CoupledGrids(const EconomyParams& econ, SimConfig sim, std::size_t levels) {
    if (levels < 2) throw std::invalid_argument("need at least two levels");
    for (std::size_t l = 0; l < levels; ++l) {
      SimConfig s = sim;
      s.n_steps = sim.n_steps << l;
      engines.emplace_back(econ, s);
    }
    for (std::size_t l = 0; l < levels; ++l) {
      if (engines[l].steps() != engines[0].steps() << l) {
        throw std::invalid_argument("grid levels do not nest");
      }
    }
    fine_steps = engines.back().steps();
    fine_dt = engines.back().dt();
  }

  void draw(RandomStream& rng, std::vector<double>& out) const {
    const double sq = std::sqrt(fine_dt);
    out.resize(fine_steps);
    for (auto& x : out) x = sq * rng.normal();
  }

  void coarsen(const std::vector<double>& fine, std::size_t level,
               std::vector<double>& out) const {
    const std::size_t factor = std::size_t{1} << (engines.size() - 1 - level);
    const std::size_t n = fine.size() / factor;
    out.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < factor; ++j) out[k] += fine[k * factor + j];
    }
  }
};

inline ConvergenceStudy finish_study(const CoupledGrids& grids,
                              std::vector<double> errors) {
  ConvergenceStudy study;
  for (std::size_t l = 0; l < grids.engines.size(); ++l) {
    study.steps.push_back(grids.engines[l].config().n_steps);
    study.dt.push_back(grids.engines[l].dt());
  }
  study.error = std::move(errors);
  for (std::size_t l = 0; l + 1 < study.error.size(); ++l) {
    study.order.push_back(std::log2(study.error[l] / study.error[l + 1]));
  }
  return study;
}

}  // namespace icm::detail
