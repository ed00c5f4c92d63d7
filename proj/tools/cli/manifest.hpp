#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace icm::cli {

struct RunManifest {
  std::string config_path;
  std::string command;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string timestamp;  // UTC, ISO 8601
  std::vector<std::string> outputs;

  nlohmann::json to_json() const;
};

/// Current UTC time, or SOURCE_DATE_EPOCH when that is set.
std::string utc_timestamp();

std::string tool_version();

}  // namespace icm::cli
