#include "random_economy.hpp"

#include <stdexcept>

#include "icm/tables.hpp"

namespace testing_support {

icm::EconomyParams random_valid_economy(std::mt19937_64& rng,
                                        const EconomyDraw& draw) {
  auto u = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  std::uniform_int_distribution<std::size_t> count(draw.min_investors,
                                                   draw.max_investors);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    icm::EconomyParams e;
    e.horizon_T = draw.horizon_T;
    int sign = draw.sigma_sign;
    if (sign == 0) sign = u(0.0, 1.0) < 0.5 ? -1 : 1;
    e.vol.sigma_v = sign * u(0.05, 0.5);
    e.vol.mu_v = 0.5 * e.vol.sigma_v * e.vol.sigma_v * u(1.05, 4.0);
    e.vol.kappa_v = u(-1.5, -0.05);
    e.vol.v0 = u(0.1, 1.5);

    const std::size_t I = count(rng);
    double wealth = 0.0;
    for (std::size_t i = 0; i < I; ++i) {
      icm::InvestorParams inv;
      inv.tau = u(0.2, 2.0);
      inv.sigma_Y = u(0.0, 0.5);
      inv.beta_Y = u(0.0, 0.5);
      inv.kappa_Y = u(-0.2, 0.2);
      inv.mu_Y = u(-0.05, 0.05);
      inv.Y0 = u(-1.0, 1.0);
      inv.X0 = i + 1 < I ? u(-0.5, 0.5) : -wealth;
      wealth += inv.X0;
      e.investors.push_back(inv);
    }
    if (icm::validate(e).ok()) return e;
  }
  throw std::runtime_error("no valid economy drawn");
}

icm::EconomyParams reference_economy(std::size_t count) {
  const auto spec = icm::table1_defaults();
  return icm::replicate(spec.vol, spec.investor, count, spec.U);
}

icm::EconomyParams heterogeneous_economy() {
  icm::EconomyParams e = reference_economy(2);
  icm::InvestorParams a;
  a.tau = 0.5;
  a.sigma_Y = 0.2;
  a.kappa_Y = 0.1;
  a.mu_Y = 0.02;
  a.beta_Y = 0.1;
  a.X0 = 0.2;
  icm::InvestorParams b;
  b.tau = 1.0 / 3.0;
  b.sigma_Y = 0.4;
  b.kappa_Y = -0.1;
  b.mu_Y = -0.01;
  b.beta_Y = 0.4;
  b.X0 = -0.4;
  e.investors = {a, a, b};
  return e;
}

}  // namespace testing_support
