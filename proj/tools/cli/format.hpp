#pragma once

#include <string>
#include <vector>

namespace icm::cli {

/// x rounded half-to-even at 4 decimals, printed with exactly 4 decimals.
std::string fixed4(double x);

/// Full precision, shortest form that round-trips.
std::string full(double x);

/// 1/n for reciprocals of small integers, otherwise fixed4.
std::string fraction(double x);

struct TextTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const;      // LF endings, header row
  std::string console() const;  // aligned columns
};

}  // namespace icm::cli
