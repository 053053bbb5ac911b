#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace lrc {

using Rng = std::mt19937_64;

/// Generator for a (seed, stream...) tuple. std::seed_seq and mt19937_64 are
/// fully specified, so draws are identical across standard libraries.
inline Rng make_rng(std::initializer_list<std::uint64_t> parts) {
  std::vector<std::uint32_t> words;
  for (std::uint64_t p : parts) {
    words.push_back(static_cast<std::uint32_t>(p));
    words.push_back(static_cast<std::uint32_t>(p >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

/// Uniform integer in [0, bound) by rejection (distributions in <random>
/// are implementation-defined, this is not).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % bound;
}

}  // namespace lrc
