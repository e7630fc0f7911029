#pragma once

#include <cstdint>

namespace percolab {

/// SplitMix64 finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based random stream: the value at position i is a pure function of
/// (seed, stream, i), so any subset of positions can be drawn in any order or
/// from any thread with identical results.
class CounterStream {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  constexpr CounterStream(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix64(mix64(seed ^ 0x5851f42d4c957f2dULL) + mix64(stream + kGamma))) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix64(key_ + (counter + 1) * kGamma);
  }

  /// Uniform on [0, 1) with 53 bits of resolution.
  constexpr double uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
};

/// Integer form of `uniform(i) < p`: compare the top 53 bits against
/// ceil(p * 2^53). Exact for every double p in [0, 1].
class BernoulliThreshold {
 public:
  explicit constexpr BernoulliThreshold(double p) noexcept
      : threshold_(p <= 0 ? 0 : p >= 1 ? (std::uint64_t{1} << 53) : ceil53(p)) {}

  constexpr bool accept(std::uint64_t bits) const noexcept { return (bits >> 11) < threshold_; }

 private:
  static constexpr std::uint64_t ceil53(double p) noexcept {
    const double scaled = p * 0x1.0p53;
    auto t = static_cast<std::uint64_t>(scaled);
    return static_cast<double>(t) < scaled ? t + 1 : t;
  }
  std::uint64_t threshold_;
};

}  // namespace percolab
