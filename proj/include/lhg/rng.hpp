#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace lhg {

// Unbiased draw from [0, n) by mask rejection. Unlike
// std::uniform_int_distribution the sequence does not depend on the
// standard library implementation.
inline uint64_t bounded(std::mt19937_64& rng, uint64_t n) {
  if (n <= 1) return 0;
  uint64_t mask = ~uint64_t{0} >> __builtin_clzll(n - 1);
  uint64_t v;
  do {
    v = rng() & mask;
  } while (v >= n);
  return v;
}

// Uniform double in [0, 1).
inline double unit_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename T>
void shuffle_vec(std::vector<T>& v, std::mt19937_64& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[bounded(rng, i)]);
  }
}

}  // namespace lhg
