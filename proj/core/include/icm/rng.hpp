#pragma once

// Philox4x32-10 counter-based generator. A stream is addressed by
// (seed, purpose, index); the draw position is the remaining counter word,
// so any path can be regenerated without touching the others.

#include <array>
#include <cstdint>
#include <limits>

namespace icm {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept;

/// Satisfies UniformRandomBitGenerator so it can drive <random>
/// distributions.
class RandomStream {
 public:
  using result_type = std::uint32_t;

  RandomStream(std::uint64_t seed, std::uint32_t purpose,
               std::uint64_t index) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Standard normal (Box-Muller; the second variate is cached).
  double normal() noexcept;

 private:
  void refill() noexcept;

  PhiloxKey key_;
  std::uint32_t purpose_;
  std::uint64_t index_;
  std::uint32_t block_ = 0;
  PhiloxCounter buffer_{};
  int pos_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace icm
