#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace aoa {

// Uniform doubles on [0, 1) from a 64-bit Mersenne Twister. The conversion
// is spelled out so streams are identical across standard libraries.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Exponential variate with the given mean.
  double exponential(double mean) { return -mean * std::log1p(-next()); }

 private:
  std::mt19937_64 engine_;
};

// Derives independent sub-stream seeds from one user seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace aoa
