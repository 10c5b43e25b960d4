#pragma once

#include <cstddef>
#include <cstdint>

namespace persnorm {

/// SplitMix64. The whole state is one 64-bit word; each draw is
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// All derived draws below are defined in terms of next() so that resamples
/// and generated datasets are reproducible across platforms.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// floor(next() * n / 2^64): an index in [0, n).
  constexpr std::size_t uniform_index(std::size_t n) noexcept {
    __extension__ using u128 = unsigned __int128;
    const u128 wide = static_cast<u128>(next()) * n;
    return static_cast<std::size_t>(wide >> 64);
  }

  /// (next() >> 11) * 2^-53, in [0, 1).
  constexpr double uniform01() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// ((next() >> 11) + 1) * 2^-53, in (0, 1]. Safe to pass to log().
  constexpr double uniform01_open_low() noexcept {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace persnorm
