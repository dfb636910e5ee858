// Seeded, platform-independent random draws for the verification suites.
// mt19937_64 output is fully specified by the standard; the uniform map
// below avoids std::uniform_real_distribution, whose results are
// implementation-defined.
#pragma once

#include <cstdint>
#include <random>

#include "diraclab/geometry.hpp"

namespace diraclab {

class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  Vec3 uniform_vec3(double lo, double hi) {
    return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)};
  }

  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(unit() * static_cast<double>(hi - lo + 1));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace diraclab
