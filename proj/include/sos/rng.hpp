#pragma once
// Seeded, stream-split randomness. Every randomized concern (job natures,
// weights, EPT jitter, bursts, execution noise) draws from its own
// mt19937_64 stream so changing one knob never reshuffles the others.

#include <cstdint>
#include <random>

namespace sos {

// SplitMix64 finalizer; used only to derive stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

enum class Stream : std::uint64_t {
  nature = 1,
  weight = 2,
  jitter = 3,
  burst = 4,
  exec_noise = 5,
  draw = 6,
};

inline std::mt19937_64 make_stream(std::uint64_t seed, Stream s) {
  return std::mt19937_64(
      splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(s))));
}

// Per-draw seed for Monte-Carlo experiments.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed + 0x632be59bd9b4e019ull * (index + 1));
}

// Uniform integer in [lo, hi], inclusive. Rejection sampling over the raw
// engine output; mt19937_64 output is fully specified by the standard, so
// traces reproduce across platforms and standard libraries.
inline std::uint64_t uniform_u64(std::mt19937_64& rng, std::uint64_t lo,
                                 std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;  // hi >= lo; span 0 means full range
  if (span == 0) return rng();
  const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return lo + x % span;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(std::mt19937_64& rng, double a, double b) {
  return a + (b - a) * uniform_unit(rng);
}

}  // namespace sos
