#pragma once

#include <cstdint>
#include <random>

namespace hais {

// splitmix64 finalizer; used to derive independent substreams from one
// master seed so parallel and serial evaluation draw identical numbers.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t tag,
                                 std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = mix64(seed);
  s = mix64(s ^ mix64(tag));
  s = mix64(s ^ mix64(a));
  s = mix64(s ^ mix64(b));
  return std::mt19937_64(s);
}

// Unbiased-enough integer draw in [0, n); stable across standard libraries,
// unlike uniform_int_distribution.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) {
  return n <= 1 ? 0 : rng() % n;
}

inline double draw_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace hais
