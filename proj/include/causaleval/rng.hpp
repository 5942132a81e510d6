#ifndef CAUSALEVAL_RNG_HPP
#define CAUSALEVAL_RNG_HPP

#include <cstdint>

namespace causaleval {

// SplitMix64 (Steele, Lea & Flood 2014). Chosen for reproducible residual
// simulation: the full algorithm fits in a dozen lines, has no platform
// dependence, and supports cheap derived streams.
//
//   state' = state + 0x9E3779B97F4A7C15
//   z = state'; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   output = z ^ (z >> 31)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Independent stream for (seed, index): the index is folded into the seed
  // through one scrambling round so neighbouring indices decorrelate.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed);
    r.state_ = r.mix(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
    return r;
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform on the open interval (0,1); never returns 0 or 1, so the value
  // is always a valid quantile order.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Bernoulli(p) draw.
  bool bernoulli(double p) { return uniform() < p; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace causaleval

#endif  // CAUSALEVAL_RNG_HPP
