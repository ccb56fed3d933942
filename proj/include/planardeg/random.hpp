#pragma once

#include <concepts>
#include <cstdint>
#include <limits>
#include <random>

namespace planardeg {

/// Default engine used by every sampler and the experiment harness.
using Engine = std::mt19937_64;

/// 64-bit bijective finalizer (splitmix64 output stage).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

/// Seed for stream `index` of a campaign seeded with `seed`. Distinct indices
/// give distinct seeds: the pre-image seed + index * gamma is injective in
/// index (gamma is odd) and mix64 is a bijection.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  constexpr std::uint64_t gamma = 0x9e3779b97f4a7c15ULL;
  return mix64(seed + (index + 1) * gamma);
}

/// Uniform integer in [0, bound). Uses plain rejection on the full 64-bit
/// output so results depend only on the engine, never on the standard
/// library's distribution implementation.
template <std::uniform_random_bit_generator Gen>
std::uint64_t uniform_below(Gen& gen, std::uint64_t bound) {
  static_assert(Gen::min() == 0 && Gen::max() == std::numeric_limits<std::uint64_t>::max(),
                "uniform_below expects a full-range 64-bit engine");
  if (bound <= 1) return 0;
  // Largest multiple of bound that fits; values at or above it are rejected.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
  for (;;) {
    const std::uint64_t r = gen();
    if (r <= limit) return r % bound;
  }
}

/// Uniform label in [1, bound].
template <std::uniform_random_bit_generator Gen>
std::uint32_t uniform_label(Gen& gen, std::uint32_t bound) {
  return static_cast<std::uint32_t>(uniform_below(gen, bound)) + 1;
}

}  // namespace planardeg
