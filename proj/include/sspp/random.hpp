#pragma once

#include <cstdint>
#include <random>

namespace sspp {

// Reproducible random stream. Stream `index` of a given `seed` is seeded from
// both values through std::seed_seq, so replicate j can be generated without
// drawing anything from replicates 0..j-1.
class Rng {
 public:
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  explicit Rng(std::uint64_t seed) : Rng(stream(seed, 0)) {}

  // Uniform on [0, 1) with 53 random bits. Does not depend on the
  // standard library's distribution implementation.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t next_u64() { return engine_(); }

 private:
  explicit Rng(std::mt19937_64 engine) : engine_(engine) {}

  std::mt19937_64 engine_;
};

}  // namespace sspp
