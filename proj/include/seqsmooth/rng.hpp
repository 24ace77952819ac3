#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace seqsmooth {

// SplitMix64 step, used to whiten seeds before feeding the main engine.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic random source: mt19937_64 seeded through SplitMix64,
// uniform doubles from the top 53 bits, normals via Box-Muller. Every
// draw sequence is a pure function of the seed, so experiment outputs
// are byte-reproducible. Replication streams are derived from
// (seed, replication index) and never collide in practice.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    engine_.seed(splitmix64(s));
  }

  static Rng for_replication(std::uint64_t seed, std::uint64_t replication) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (replication + 0x9E3779B97F4A7C15ULL * (replication + 1));
    return Rng(splitmix64(s));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the pair's second value is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace seqsmooth
