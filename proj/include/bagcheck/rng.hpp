#pragma once

#include <cstddef>
#include <cstdint>

namespace bagcheck {

using Seed = std::uint64_t;

/// SplitMix64 output function: golden-gamma increment then the 64-bit
/// finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of child stream `index` under `parent`. Pure, so every trial or
/// bag can rebuild its generator without shared state.
Seed derive_seed(Seed parent, std::uint64_t index) noexcept;

/// Portable random source.
///
/// The engine is SplitMix64 (Steele, Lea and Flood, 2014): a 64-bit
/// counter advanced by the golden gamma 0x9E3779B97F4A7C15 and passed
/// through a fixed finalizer. Seeding is free, so every trial and every
/// bag gets its own stream. Derived draws avoid <random> distributions,
/// whose algorithms are implementation-defined:
///   uniform01  top 53 bits of one word, scaled by 2^-53
///   below(n)   rejection of words at or above the largest multiple of n
///   normal     Box-Muller (cosine branch, then the cached sine branch)
/// Satisfies std::uniform_random_bit_generator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(Seed seed) : state_(seed) {}

  static Rng stream(Seed parent, std::uint64_t index) { return Rng(derive_seed(parent, index)); }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64() {
    const std::uint64_t out = splitmix64(state_);
    state_ += 0x9E3779B97F4A7C15ULL;
    return out;
  }
  double uniform01();
  /// Uniform integer in [0, n); n must be positive.
  std::size_t below(std::size_t n);
  double normal();

 private:
  std::uint64_t state_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace bagcheck
