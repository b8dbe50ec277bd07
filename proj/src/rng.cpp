#include "dqlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace dqlab {

double SplitMix64::normal() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  have_cached_ = true;
  return radius * std::cos(angle);
}

std::uint64_t SplitMix64::derive(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ (0xa0761d6478bd642fULL * (index + 1)));
  return mix.next();
}

}  // namespace dqlab
