#pragma once

#include <cstdint>

namespace bincs {

// SplitMix64 finalizer. A bijection on 64-bit words, so distinct counters
// always map to distinct seeds.
constexpr std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based seed for stream `index` under `base`. For a fixed base the map
// index -> seed is injective.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return mix_seed(mix_seed(base) + index);
}

}  // namespace bincs
