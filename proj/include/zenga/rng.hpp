#ifndef ZENGA_RNG_HPP
#define ZENGA_RNG_HPP

#include <cstdint>
#include <random>

namespace zenga {

// Standard normal quantile function (Acklam's rational approximation,
// relative error below 1.2e-9).  Pure rational arithmetic, no erf, so
// results do not depend on the platform's libm special functions.
double normal_quantile(double p);

// SplitMix64 finaliser, used to derive independent substream seeds.
std::uint64_t mix64(std::uint64_t x);

// Seeded random stream.  The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; uniforms take the top 53 bits and
// are mapped into the open interval (0, 1); normals go through
// normal_quantile.  The whole chain is documented in the README so fixtures
// stay portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0, 1).
  double uniform01() {
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via inverse-CDF sampling.
  double normal() { return normal_quantile(uniform01()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace zenga

#endif  // ZENGA_RNG_HPP
