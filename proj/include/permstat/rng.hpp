#pragma once

#include <cstdint>

namespace permstat {

// SplitMix64. Small, fast, and good enough for Monte Carlo estimation of
// bounded statistics; chosen for its trivially splittable streams.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in {0, ..., bound-1}, unbiased via rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

// Independent stream for replicate r of a run seeded with seed, so that
// replicates can be drawn in any order or in parallel.
inline SplitMix64 replicate_stream(std::uint64_t seed, std::uint64_t replicate) {
  SplitMix64 mixer(seed ^ 0xA0761D6478BD642FULL);
  std::uint64_t a = mixer.next();
  SplitMix64 rep_mixer(replicate + 0x589965CC75374CC3ULL);
  return SplitMix64(a ^ rep_mixer.next());
}

}  // namespace permstat
