#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace addbo {

using Rng = std::mt19937_64;

/// Mixes a base seed with a list of keys (round, group, trial, ...) into an
/// independent stream seed. Streams keyed by distinct tuples do not overlap
/// in practice, so parallel workers can draw from them in any order.
inline std::uint64_t substream_seed(std::uint64_t seed,
                                    std::initializer_list<std::uint64_t> keys) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(seed);
  for (auto k : keys) h = mix(h ^ mix(k + 0x632be59bd9b4e019ULL));
  return h;
}

inline Rng make_substream(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> keys) {
  return Rng(substream_seed(seed, keys));
}

}  // namespace addbo
