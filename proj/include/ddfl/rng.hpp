#pragma once

#include <cstdint>

namespace ddfl {

// Counter-based generator: draw k of stream s under seed q is
//
//   mix(mix(q ^ mix(s)) + k * GOLDEN)
//
// where mix is the splitmix64 finalizer. Every draw is addressable by
// (seed, stream, counter), so independent consumers never share state and
// any value can be recomputed in isolation (used for the common random
// numbers shared across scenario sets).
//
// Stream ids used by the generator and the demand model. Keeping them in one
// table documents the split and prevents collisions.
enum : std::uint64_t {
  kStreamCustomerPosition = 1,
  kStreamCustomerMean = 2,
  kStreamCustomerSpread = 3,
  kStreamFacilityPosition = 4,
  kStreamClusterSeeding = 5,
  kStreamScenarioUniforms = 6,
};

namespace detail {
inline std::uint64_t splitmix_finalize(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace detail

// Stateless indexed access: value #index of the given stream.
inline std::uint64_t rng_u64_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  using detail::splitmix_finalize;
  const std::uint64_t base = splitmix_finalize(seed ^ splitmix_finalize(stream));
  return splitmix_finalize(base + index * 0x9e3779b97f4a7c15ull);
}

// Uniform on the open interval (0,1): 53-bit mantissa offset by half an ulp
// so 0 and 1 are unreachable (inverse-CDF sampling needs both excluded).
inline double rng_open01_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return (static_cast<double>(rng_u64_at(seed, stream, index) >> 11) + 0.5) * 0x1.0p-53;
}

// Sequential view over one stream.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64() { return rng_u64_at(seed_, stream_, counter_++); }
  double next_open01() { return rng_open01_at(seed_, stream_, counter_++); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_open01(); }

  // Unbiased integer in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~0ull - (~0ull % n);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace ddfl
