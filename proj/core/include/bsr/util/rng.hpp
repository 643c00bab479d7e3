#pragma once

#include <cstdint>
#include <cmath>

namespace bsr {

// splitmix64; used for seed derivation and stateless hashing.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from (seed, a, b). Streams with
// distinct tags never collide in practice.
inline uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b = 0) {
  return splitmix64(splitmix64(seed ^ splitmix64(a)) ^ splitmix64(b ^ 0x5851f42d4c957f2dULL));
}

// Deterministic PRNG with self-contained distributions. std::*_distribution
// is implementation-defined, so we roll the few we need to keep trajectories
// bit-reproducible independent of the standard library.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) : state_(splitmix64(seed ^ 0xda3e39cb94b95bdbULL)) {}

  uint64_t next_u64() {
    state_ = splitmix64(state_ + 0x9e3779b97f4a7c15ULL);
    return state_;
  }

  // uniform in [0,1)
  double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  float uniformf(float lo, float hi) { return float(uniform(lo, hi)); }

  // inclusive integer range
  int64_t uniform_int(int64_t lo, int64_t hi) {
    if (hi <= lo) return lo;
    uint64_t span = uint64_t(hi - lo) + 1;
    return lo + int64_t(next_u64() % span);
  }

  // standard normal via Box-Muller (no cached spare: keeps the state a pure
  // function of the draw count)
  double normal() {
    double u1 = uniform01();
    double u2 = uniform01();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  double normal(double mu, double sigma) { return mu + sigma * normal(); }
  float normalf(float mu, float sigma) { return float(normal(mu, sigma)); }

  // Fisher-Yates shuffle of an index container
  template <typename Vec>
  void shuffle(Vec& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = size_t(next_u64() % i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t state_;
};

}  // namespace bsr
