#ifndef RCX_RNG_HPP
#define RCX_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace rcx {

/// SplitMix64 (Steele, Lea & Flood 2014): a 64-bit Weyl sequence passed
/// through a fixed bijective finaliser. The output sequence depends only on
/// the seed, so streams are bit-identical on every platform.
///
/// Substreams: stream(master, index) seeds a generator with
/// mix(master ^ mix(index + golden)). Replicate r of a Monte Carlo run always
/// draws from stream(master_seed, r), independent of thread scheduling.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  explicit constexpr SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static constexpr SplitMix64 stream(std::uint64_t master, std::uint64_t index) noexcept {
    return SplitMix64(mix(master ^ mix(index + kGolden)));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  constexpr result_type operator()() noexcept {
    state_ += kGolden;
    return mix(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Bernoulli(p) draw; exact at p = 0 and p = 1.
  constexpr bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Standard normal via the Box-Muller transform. One normal per call; the
  /// sine branch is discarded so that the stream position is a fixed function
  /// of the number of draws.
  double normal() noexcept {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace rcx

#endif  // RCX_RNG_HPP
