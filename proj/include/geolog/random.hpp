#pragma once

// Seeded sampling. Each sample index gets its own std::mt19937_64 stream
// whose seed is SplitMix64-mixed from (seed, index), so results do not
// depend on evaluation order or thread count.

#include <cstdint>
#include <random>

#include "geolog/matcore.hpp"

namespace geolog {

std::uint64_t splitmix64(std::uint64_t x);

class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index);

  double uniform(double lo, double hi);
  double normal();
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Entries uniform in [lo, hi], rejected until det lies in [det_lo, det_hi].
Mat random_gl_plus(SampleStream& rng, int n, double lo = -2.0, double hi = 2.0,
                   double det_lo = 0.1, double det_hi = 10.0);

/// Haar-distributed element of SO(n).
Mat haar_rotation(SampleStream& rng, int n);

/// Q diag(exp(u_i)) Q^T with u_i uniform in [-spread, spread].
Mat random_spd(SampleStream& rng, int n, double spread = 1.0);

/// Entries uniform in [-scale, scale].
Mat random_matrix(SampleStream& rng, int n, double scale = 1.0);

}  // namespace geolog
