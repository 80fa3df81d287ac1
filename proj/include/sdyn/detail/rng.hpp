#pragma once

#include <cstdint>
#include <random>

namespace sdyn::detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Mixes a stream id into a base seed; used to give every (node, walk)
// pair its own generator so results do not depend on execution order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(seed ^ splitmix64(a ^ splitmix64(b)));
}

// std::mt19937_64 output is pinned by the standard; the std distributions
// are not, so sampling goes through the helpers below to keep generated
// graphs byte-identical across platforms.
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t r = g();
    if (r >= threshold) return r % n;
  }
}

}  // namespace sdyn::detail
