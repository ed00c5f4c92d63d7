#include "format.hpp"

#include <algorithm>
#include <cfenv>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace icm::cli {

std::string fixed4(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  std::fesetround(FE_TONEAREST);
  double scaled = std::nearbyint(x * 1e4);
  if (scaled == 0.0) scaled = 0.0;  // no "-0.0000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", scaled / 1e4);
  return buf;
}

std::string full(double x) {
  if (x == 0.0) x = 0.0;
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string fraction(double x) {
  if (x > 0.0 && x <= 1.0) {
    const double n = std::round(1.0 / x);
    if (n >= 1.0 && n <= 20.0 && std::abs(1.0 / n - x) < 1e-12) {
      return n == 1.0 ? "1" : "1/" + std::to_string(static_cast<int>(n));
    }
  }
  return fixed4(x);
}

std::string TextTable::csv() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

namespace {

// Display width in code points (the console table may contain "∞").
std::size_t width(const std::string& s) {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

}  // namespace

std::string TextTable::console() const {
  std::vector<std::size_t> w(header.size(), 0);
  auto grow = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size() && i < w.size(); ++i) {
      w[i] = std::max(w[i], width(cells[i]));
    }
  };
  grow(header);
  for (const auto& r : rows) grow(r);

  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << "  ";
      os << std::string(w[i] - width(cells[i]), ' ') << cells[i];
    }
    os << '\n';
  };
  line(header);
  std::size_t total = 0;
  for (auto x : w) total += x;
  os << std::string(total + 2 * (w.empty() ? 0 : w.size() - 1), '-') << '\n';
  for (const auto& r : rows) line(r);
  return os.str();
}

}  // namespace icm::cli
