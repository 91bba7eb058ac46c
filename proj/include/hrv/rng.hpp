#pragma once
// Seeded randomness helpers.  Campaign trials derive their seeds by mixing
// the master seed with the trial coordinates, so results are independent of
// scheduling and identical across runs.  Uniform doubles are produced from
// raw mt19937_64 output to keep the stream implementation-independent.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <type_traits>

#include "hrv/complex_linalg.hpp"

namespace hrv {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x6A09E667F3BCC909ull;
  for (std::uint64_t p : parts) h = splitmix64(h ^ splitmix64(p));
  return h;
}

// Convenience overload so trial indices and tags of any integral type can be
// mixed without explicit casts.
template <class... Parts, class = std::enable_if_t<(std::is_integral_v<Parts> && ...)>>
std::uint64_t mix_seed(Parts... parts) {
  return mix_seed({static_cast<std::uint64_t>(parts)...});
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform_symmetric() { return 2.0 * uniform01() - 1.0; }

  // Uniform over the unit square [0,1) x [0,1) in the complex plane.
  cdouble unit_square() {
    const double re = uniform01();
    const double im = uniform01();
    return {re, im};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hrv
