#pragma once

#include <cstdint>

namespace said {

// xoshiro256** with splitmix64 seeding. Self-contained so that identical
// seeds give identical streams on every platform and standard library.
// One independent stream per link direction and per node (see Runner).
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t next_u64();

  // Uniform in [0, 1). Derived from the top 53 bits, never via
  // std::uniform_real_distribution (whose output is implementation-defined).
  double next_double();

  // Uniform integer in [0, n). n must be > 0.
  std::uint64_t next_below(std::uint64_t n);

  // Derives a decorrelated child seed, for per-entity streams.
  static std::uint64_t derive(std::uint64_t master, std::uint64_t salt);

 private:
  std::uint64_t s_[4];
};

}  // namespace said
