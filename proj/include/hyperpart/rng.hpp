#pragma once

// Deterministic random utilities. Everything here is pinned to a fixed
// algorithm (splitmix64) so results are reproducible across platforms and
// standard library versions; std::shuffle / std::uniform_*_distribution are
// deliberately avoided because their output is implementation-defined.

#include <cstdint>
#include <string_view>
#include <vector>

namespace hyperpart {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stateless hash of a value into a well-mixed 64-bit word.
inline std::uint64_t mix64(std::uint64_t x) {
  std::uint64_t s = x;
  return splitmix64(s);
}

// Combine a seed with a salt value into a new independent seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  return mix64(seed ^ (0x9e3779b97f4a7c15ULL + mix64(salt)));
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() { return splitmix64(state_); }

  // Uniform double in [0, 1) with 53 bits of precision.
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform index in [0, n). Modulo bias is negligible for desk-scale n and
  // keeps the mapping trivially portable.
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    // Fisher-Yates with the pinned generator.
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// Per-node initial coordinate: depends only on (seed, vector index, node id),
// not on traversal order, so relabeling-equivariance tests can reproduce the
// stream per original label.
inline double node_u01(std::uint64_t seed, std::uint32_t vector_idx,
                       std::uint64_t node_id) {
  std::uint64_t s = mix_seed(mix_seed(seed, vector_idx), node_id);
  return static_cast<double>(splitmix64(s) >> 11) * 0x1.0p-53;
}

}  // namespace hyperpart
