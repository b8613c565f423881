#pragma once

#include <cstdint>
#include <random>

namespace betaens {

/// Integer mixing used to derive independent per-trial streams from a master
/// seed. This is the SplitMix64 finalizer applied to
/// `seed + (index + 1) * 0x9E3779B97F4A7C15`; it is part of the public
/// reproducibility contract and must not change.
constexpr std::uint64_t mix64(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministic seeded source of uniform variates. Owned by one thread.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Stream for trial `index` of an experiment seeded with `master_seed`.
  static RandomStream for_trial(std::uint64_t master_seed, std::uint64_t index) {
    return RandomStream(mix64(master_seed, index));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace betaens
