#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rotvel {

// Deterministic random source. The raw mt19937_64 stream is pinned by the
// standard; the distribution transforms live here because the standard library
// distribution objects are implementation-defined and would break byte-level
// reproducibility of seeded outputs across toolchains.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next() { return gen_(); }

  // Uniform double in [0, 1) with 53 significant bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; one draw consumed per call, second branch discarded so the
  // stream position never depends on caller history.
  double normal(double sigma) {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();  // log(0) guard; probability 2^-53
    return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  // Decorrelating hash for per-task substreams (splitmix64 finalizer chain).
  static uint64_t mix(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
    uint64_t z = seed;
    for (uint64_t w : {a, b, c}) {
      z += 0x9e3779b97f4a7c15ULL + w;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      z = z ^ (z >> 31);
    }
    return z;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace rotvel
