#pragma once

#include <cstdint>
#include <random>

namespace lmbfuse {

namespace detail {

// SplitMix64 finalizer, used to derive well-separated seeds from a master
// seed plus tags. Two streams with different (tag, index) pairs are
// statistically independent for every practical purpose.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Seeded pseudo-random stream. A stream owns its generator state; derived
/// sub-streams depend only on the base seed and the derivation tags, never
/// on how much of the parent stream has been consumed. That makes run
/// sub-seeds stable when the run count changes.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed)
      : seed_(seed), engine_(detail::mix64(seed)) {}

  RandomStream substream(std::uint64_t tag) const {
    return RandomStream(detail::mix64(seed_ ^ detail::mix64(tag)));
  }

  RandomStream substream(std::uint64_t tag, std::uint64_t index) const {
    return RandomStream(
        detail::mix64(seed_ ^ detail::mix64(tag) ^ detail::mix64(index * 0x9e3779b97f4a7c15ULL + 1)));
  }

  std::uint64_t seed() const { return seed_; }

  /// Uniform double in [0, 1).
  double uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  double gaussian(double mean, double stddev) {
    return std::normal_distribution<double>(mean, stddev)(engine_);
  }

  int poisson(double rate) {
    if (rate <= 0.0) return 0;
    return std::poisson_distribution<int>(rate)(engine_);
  }

  std::uint64_t next_u64() { return engine_(); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace lmbfuse
