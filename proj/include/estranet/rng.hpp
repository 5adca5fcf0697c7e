#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

namespace estranet {

// SplitMix64 finalizer; used to derive independent seed streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ b);
}

// Canonicalizes -0.0 so both zero representations hash alike.
inline std::uint64_t double_bits(double x) {
  if (x == 0.0) x = 0.0;
  return std::bit_cast<std::uint64_t>(x);
}

/// Seed of the i-th optimizer run at a given lambda. Depends only on
/// (base_seed, lambda, run_index), so a larger run budget extends the same
/// seed family instead of replacing it.
inline std::uint64_t run_seed(std::uint64_t base_seed, double lambda, int run_index) {
  std::uint64_t h = splitmix64(base_seed);
  h = splitmix64(h ^ double_bits(lambda));
  return splitmix64(h ^ static_cast<std::uint64_t>(run_index));
}

/// Unbiased draw from [0, n), n >= 1. Fixed rejection scheme so results do
/// not depend on the standard library's distribution implementation.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t rem = (max % n + 1) % n;  // 2^64 mod n
  const std::uint64_t bound = max - rem;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > bound);
  return x % n;
}

template <typename T>
void shuffle_inplace(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_index(rng, i)]);
  }
}

inline std::vector<std::uint32_t> random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint32_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i);
  shuffle_inplace(perm, rng);
  return perm;
}

}  // namespace estranet
