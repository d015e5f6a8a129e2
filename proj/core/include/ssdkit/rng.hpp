#pragma once

#include <cstdint>

#include "ssdkit/types.hpp"

namespace ssdkit {

/// Deterministic generator with a portable uniform mapping, so that reports
/// produced from the same seed are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  // splitmix64 step
  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  Vector vector(Eigen::Index dim, double lo, double hi) {
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = uniform(lo, hi);
    return v;
  }

 private:
  std::uint64_t state_;
};

}  // namespace ssdkit
