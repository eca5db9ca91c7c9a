#pragma once

#include <cstdint>

namespace dsmkit {

/// xorshift64* pseudo-random generator: shifts 12, 25, 27 and multiplier
/// 0x2545F4914F6CDD1D. Used instead of std::mt19937 so that a seeded run
/// can be reproduced exactly from this recurrence in any language.
class Xorshift64Star {
 public:
  /// Seed 0 is invalid for the recurrence and is replaced by a fixed
  /// nonzero constant.
  explicit Xorshift64Star(std::uint64_t seed)
      : state_(seed != 0 ? seed : 0x9E3779B97F4A7C15ULL) {}

  std::uint64_t next_u64() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [-1, 1).
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

 private:
  std::uint64_t state_;
};

}  // namespace dsmkit
