#pragma once

#include <cstdint>

namespace d2dsec::rng {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent random streams drawn inside one trial.
enum class Stream : std::uint64_t {
  PointCount = 1,
  Positions = 2,
  Fading = 3,
  LegitimateChannel = 4,
};

/// Counter-based generator: the sequence is a pure function of
/// (seed, trial, stream), so trials can be evaluated in any order or on any
/// thread and still reproduce.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t trial, Stream stream)
      : key_(mix64(mix64(seed ^ 0x6a09e667f3bcc909ULL) ^ mix64(trial + 0x3c6ef372fe94f82bULL) ^
                   (static_cast<std::uint64_t>(stream) * 0x9e3779b97f4a7c15ULL))) {}

  std::uint64_t next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform on (0, 1].
  double uniform_open0() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Unit-mean exponential.
  double exponential();

  /// Poisson variate: inversion for small means, PTRS (Hormann 1993) above.
  std::uint64_t poisson(double mean);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace d2dsec::rng
