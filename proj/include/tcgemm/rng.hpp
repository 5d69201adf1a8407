#pragma once

#include <cstdint>

namespace tcgemm {

/// SplitMix64. Bit-exact on every platform; all arithmetic is mod 2^64.
class Rng64 {
 public:
  explicit Rng64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [-1, 1), built from the top 53 bits of next().
  double uniform() noexcept { return uniform_from_bits(next()); }

  static double uniform_from_bits(std::uint64_t u) noexcept;

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace tcgemm
