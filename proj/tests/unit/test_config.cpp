#include <gtest/gtest.h>

#include "icm/config.hpp"

namespace {

constexpr const char* kJson = R"({
  "vol": {"mu_v": 0.05, "kappa_v": -0.7, "sigma_v": -0.3, "v0": 1.0},
  "horizon_T": 1.0,
  "investors": [{"tau": 0.5, "sigma_Y": 0.3, "beta_Y": 0.2}],
  "replicate": 3
})";

constexpr const char* kKeyValue = R"(# comment
vol.mu_v = 0.05
vol.kappa_v = -0.7
vol.sigma_v = -0.3   # trailing
vol.v0 = 1
horizon_T = 1
investors.0.tau = 0.5
investors.0.sigma_Y = 0.3
investors.0.beta_Y = 0.2
replicate = 3
)";

void expect_same(const icm::EconomyParams& a, const icm::EconomyParams& b) {
  EXPECT_EQ(a.vol.mu_v, b.vol.mu_v);
  EXPECT_EQ(a.vol.kappa_v, b.vol.kappa_v);
  EXPECT_EQ(a.vol.sigma_v, b.vol.sigma_v);
  EXPECT_EQ(a.vol.v0, b.vol.v0);
  EXPECT_EQ(a.horizon_T, b.horizon_T);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.investors[i].tau, b.investors[i].tau);
    EXPECT_EQ(a.investors[i].sigma_Y, b.investors[i].sigma_Y);
    EXPECT_EQ(a.investors[i].beta_Y, b.investors[i].beta_Y);
    EXPECT_EQ(a.investors[i].kappa_Y, b.investors[i].kappa_Y);
    EXPECT_EQ(a.investors[i].mu_Y, b.investors[i].mu_Y);
    EXPECT_EQ(a.investors[i].X0, b.investors[i].X0);
  }
}

TEST(Config, JsonReplicate) {
  const auto e = icm::parse_economy_json(kJson);
  ASSERT_EQ(e.size(), 3u);
  EXPECT_EQ(e.investors[2].tau, 0.5);
  EXPECT_EQ(e.investors[2].kappa_Y, 0.0);
  EXPECT_EQ(e.vol.sigma_v, -0.3);
}

TEST(Config, KeyValueMatchesJson) {
  expect_same(icm::parse_economy_keyvalue(kKeyValue),
              icm::parse_economy_json(kJson));
}

TEST(Config, AutoDetect) {
  expect_same(icm::parse_economy(kKeyValue), icm::parse_economy(kJson));
}

TEST(Config, RoundTrip) {
  const auto e = icm::parse_economy_json(kJson);
  expect_same(icm::parse_economy_json(icm::economy_to_json(e)), e);
}

TEST(Config, Errors) {
  EXPECT_THROW(icm::parse_economy_json("{"), icm::ConfigError);
  EXPECT_THROW(icm::parse_economy_json("[]"), icm::ConfigError);
  EXPECT_THROW(icm::parse_economy_json(R"({"horizon_T": 1, "investors": []})"),
               icm::ConfigError);
  EXPECT_THROW(icm::parse_economy_json(R"({
    "vol": {"mu_v": 0.05, "kappa_v": -0.7, "sigma_v": -0.3, "v0": 1},
    "horizon_T": 1, "investors": [{"sigma_Y": 0.3}]})"),
               icm::ConfigError);
  EXPECT_THROW(icm::parse_economy_json(R"({
    "vol": {"mu_v": 0.05, "kappa_v": -0.7, "sigma_v": -0.3, "v0": 1},
    "horizon_T": 1, "investors": [{"tau": 1, "bogus": 2}]})"),
               icm::ConfigError);
  EXPECT_THROW(icm::parse_economy_json(R"({
    "vol": {"mu_v": 0.05, "kappa_v": -0.7, "sigma_v": -0.3, "v0": 1},
    "horizon_T": 1, "investors": [{"tau": 1}, {"tau": 2}], "replicate": 2})"),
               icm::ConfigError);
  EXPECT_THROW(icm::parse_economy_keyvalue("vol.mu_v 0.05"), icm::ConfigError);
  EXPECT_THROW(icm::parse_economy_keyvalue("vol.mu_v = abc"), icm::ConfigError);
  EXPECT_THROW(icm::parse_economy_keyvalue("investors.x.tau = 1"),
               icm::ConfigError);
}

TEST(Config, MissingFile) {
  EXPECT_THROW(icm::load_economy("/nonexistent/economy.json"),
               icm::ConfigError);
}

}  // namespace
