#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace pigeon {

// SplitMix64. Hand-rolled so that seeded runs are bit-identical across
// platforms and standard libraries; std::uniform_int_distribution is
// implementation-defined and must not appear anywhere in seeded paths.
struct SplitMix64 {
  uint64_t state = 0;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by rejection; bound > 0.
  uint64_t below(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("rng: bound must be > 0");
    uint64_t threshold = (-bound) % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  bool coin() { return next() & 1; }
};

// Stateless mix of (seed, index); used to derive independent child seeds
// for trials/workers so results do not depend on the worker count.
inline uint64_t mix_seed(uint64_t seed, uint64_t index) {
  SplitMix64 g(seed ^ (0x632be59bd9b4e019ull * (index + 1)));
  return g.next();
}

// Sorted uniform k-subset of {1..n}, partial Fisher-Yates.
inline std::vector<int> sample_subset(SplitMix64& g, int n, int k) {
  std::vector<int> arr(n);
  for (int i = 0; i < n; i++) arr[i] = i + 1;
  for (int i = 0; i < k; i++) {
    int j = i + static_cast<int>(g.below(static_cast<uint64_t>(n - i)));
    std::swap(arr[i], arr[j]);
  }
  std::vector<int> out(arr.begin(), arr.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pigeon
