#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>

namespace oracle_lab {

// SplitMix64 finalizer. Used to derive independent substream seeds.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Folds a list of tags into a master seed. Different tag paths give
// statistically independent streams; identical paths give identical ones.
[[nodiscard]] constexpr std::uint64_t derive_seed(
    std::uint64_t master, std::initializer_list<std::uint64_t> tags) noexcept {
  std::uint64_t s = mix64(master);
  for (auto tag : tags) s = mix64(s ^ mix64(tag + 0x632BE59BD9B4E019ULL));
  return s;
}

/// Deterministic random stream (SplitMix64).
///
/// Construction is a single store, so a fresh stream per (purpose, node,
/// task) costs nothing. Real-valued conversions are done here rather than
/// through <random> distributions so results are bit-identical across
/// standard library implementations. Every helper consumes a documented,
/// fixed number of raw draws.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() {
    const std::uint64_t out = mix64(state_);
    state_ += 0x9E3779B97F4A7C15ULL;
    return out;
  }

  /// One draw. Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// One draw. Uniform on [low, high).
  double uniform(double low, double high) { return low + (high - low) * uniform01(); }

  /// Two draws. Standard normal via Box-Muller, no cached second variate.
  double standard_normal();

  /// One draw. Uniform index in [0, n); n must be positive.
  std::size_t index(std::size_t n) {
    auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

 private:
  std::uint64_t state_;
};

}  // namespace oracle_lab
