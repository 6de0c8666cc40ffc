#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mesonet {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to decorrelate substream seeds derived from a
// single master seed.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a over a string, for hashing stream tags and config payloads.
inline uint64_t fnv1a(std::string_view s, uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Every random decision in a run draws from a named substream so that results
// are reproducible regardless of event interleaving. `tag` identifies the
// purpose (e.g. "link_channel"), `id` the entity (e.g. link index).
inline Rng make_stream(uint64_t master_seed, std::string_view tag, uint64_t id) {
  uint64_t h = fnv1a(tag, mix64(master_seed));
  return Rng(mix64(h ^ (0x51ed2701a33cull + id * 0x9e3779b97f4a7c15ULL)));
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double exponential(Rng& rng, double mean) {
  return std::exponential_distribution<double>(1.0 / mean)(rng);
}

inline double gaussian(Rng& rng, double mean, double sigma) {
  return std::normal_distribution<double>(mean, sigma)(rng);
}

inline bool bernoulli(Rng& rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

}  // namespace mesonet
