#pragma once

#include <cstdint>

namespace dqlab {

// splitmix64: small, fast, deterministic across platforms. Used everywhere a
// seeded stream is needed so outputs are bit-reproducible.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in (0, 1]; never returns 0 so log() below is safe.
  double uniform() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (one value per call; the pair's second
  // member is cached).
  double normal();

  // Derives an independent stream for a worker/trajectory index.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

 private:
  std::uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

inline constexpr std::uint64_t kDefaultSeed = 0xD5EED;

}  // namespace dqlab
