#pragma once

// Economy configuration files.
//
// JSON form:
//   {"vol": {"mu_v": .., "kappa_v": .., "sigma_v": .., "v0": ..},
//    "horizon_T": ..,
//    "investors": [{"tau": .., "mu_Y": .., "kappa_Y": .., "sigma_Y": ..,
//                   "beta_Y": .., "Y0": .., "X0": ..}, ...],
//    "replicate": N}            // optional
//
// Flat key=value form (one pair per line, '#' starts a comment):
//   vol.mu_v = 0.05
//   horizon_T = 1
//   investors.0.tau = 0.5
//   replicate = 2
//
// With `replicate: N` the investor list must hold exactly one template
// investor, which is expanded into N copies with X0 = 0.
// Missing investor fields default to zero, except tau which is required.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "icm/model.hpp"

namespace icm {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

EconomyParams parse_economy_json(std::string_view text);
EconomyParams parse_economy_keyvalue(std::string_view text);

/// Detects the format from the first non-blank character ('{' means JSON).
EconomyParams parse_economy(std::string_view text);

/// Reads and parses a configuration file; throws ConfigError when the file is
/// missing or malformed.
EconomyParams load_economy(const std::filesystem::path& path);

/// Canonical JSON rendering (investors always expanded).
std::string economy_to_json(const EconomyParams& econ, int indent = 2);

}  // namespace icm
