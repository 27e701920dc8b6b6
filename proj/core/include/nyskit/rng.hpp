#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "nyskit/types.hpp"

namespace nyskit {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}
}  // namespace detail

// Deterministic RNG over (seed, stream). All draw primitives are implemented
// here rather than via std distributions, so sequences are stable across
// standard libraries and identical (seed, stream) is bit-for-bit reproducible.
class Rng {
 public:
  explicit Rng(RandomSeed s)
      : engine_(detail::splitmix64(detail::splitmix64(s.seed) ^
                                   detail::splitmix64(s.stream + 0x9E3779B97F4A7C15ULL))) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound), bound >= 1. Modulo with rejection.
  int uniform_int(int bound) {
    const std::uint64_t b = static_cast<std::uint64_t>(bound);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
    std::uint64_t r;
    do {
      r = next_u64();
    } while (r >= limit);
    return static_cast<int>(r % b);
  }

  double exponential() { return -std::log(1.0 - uniform()); }

  // Box-Muller, one value per call pair.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Gamma with integer shape, rate 1 (sum of exponentials).
  double gamma_int(int shape) {
    double acc = 0.0;
    for (int i = 0; i < shape; ++i) acc += exponential();
    return acc;
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace nyskit
