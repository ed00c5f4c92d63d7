#include "manifest.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>

#ifndef ICM_VERSION
#define ICM_VERSION "0.0.0"
#endif

namespace icm::cli {

nlohmann::json RunManifest::to_json() const {
  return {{"config", config_path},   {"command", command},
          {"seed", seed},            {"tool_version", tool_version},
          {"timestamp", timestamp},  {"outputs", outputs}};
}

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(epoch, &end, 10);
    if (end != epoch && *end == '\0') now = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string tool_version() { return ICM_VERSION; }

}  // namespace icm::cli
