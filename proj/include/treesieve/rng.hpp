#ifndef TREESIEVE_RNG_HPP_
#define TREESIEVE_RNG_HPP_

#include <cmath>
#include <cstdint>

namespace treesieve {

/* SplitMix64 generator. One root seed drives a whole run; per-trial
   substreams are derived by counter so trials are reproducible regardless
   of scheduling. Satisfies UniformRandomBitGenerator. */
class Rng {
 public:
  using result_type = uint64_t;

  explicit Rng(uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }
  result_type operator()() { return next_u64(); }

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n), n > 0. Rejection sampling, no modulo bias.
  uint64_t next_below(uint64_t n) {
    uint64_t threshold = (0 - n) % n;
    for (;;) {
      uint64_t v = next_u64();
      if (v >= threshold) return v % n;
    }
  }

  bool next_bool() { return next_u64() >> 63; }
  bool next_bernoulli(double p) { return next_double() < p; }

  // Standard normal via Box-Muller; deterministic across platforms.
  double next_gaussian();

  // Independent substream for trial `stream`, derived from `root_seed`.
  static Rng substream(uint64_t root_seed, uint64_t stream) {
    Rng mixer(root_seed ^ (0xd1342543de82ef95ull * (stream + 1)));
    return Rng(mixer.next_u64());
  }

 private:
  uint64_t state_;
};

inline double Rng::next_gaussian() {
  // Box-Muller; discards the second variate.
  for (;;) {
    double u = next_double();
    double v = next_double();
    if (u <= 0.0) continue;
    double r = std::sqrt(-2.0 * std::log(u));
    return r * std::cos(6.283185307179586476925286766559 * v);
  }
}

}  // namespace treesieve

#endif  // TREESIEVE_RNG_HPP_
