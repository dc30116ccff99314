#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qedacvc {

// splitmix64 finalizer; used to derive independent, reproducible stream
// seeds from one user-facing seed.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t base, std::string_view tag, uint64_t a = 0, uint64_t b = 0) {
  uint64_t h = mix64(base);
  for (char c : tag) h = mix64(h ^ static_cast<uint64_t>(static_cast<unsigned char>(c)));
  h = mix64(h ^ a);
  return mix64(h ^ b);
}

using Rng = std::mt19937_64;

inline Rng make_rng(uint64_t base, std::string_view tag, uint64_t a = 0, uint64_t b = 0) {
  return Rng(derive_seed(base, tag, a, b));
}

}  // namespace qedacvc
