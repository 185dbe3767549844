#include "sspp/random.hpp"

#include <array>

namespace sspp {

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  // Domain tag keeps these streams distinct from a plain seed_seq{seed}.
  const std::array<std::uint32_t, 5> words = {
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
      0x53535050u};
  std::seed_seq seq(words.begin(), words.end());
  return Rng(std::mt19937_64(seq));
}

}  // namespace sspp
