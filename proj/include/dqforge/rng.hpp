#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dq {

// FNV-1a, used to derive per-column RNG streams from the master seed so that
// results do not depend on column evaluation order or thread scheduling.
inline std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 14695981039346656037ull) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t deriveSeed(std::uint64_t master, std::string_view stage, std::string_view attribute) {
  std::uint64_t h = fnv1a(stage);
  h = fnv1a(attribute, h);
  h ^= master + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

inline std::mt19937_64 makeRng(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace dq
