#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace projcurv {

// Counter-seeded generator used throughout the estimators. Each stream is a
// pure function of (seed, index), so a parallel map over sample indices
// produces the same numbers for any worker count or schedule. Self-contained
// on purpose: the standard distributions are implementation-defined, which
// would break bit-reproducibility of recorded runs.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t index) {
    state_ = mix(mix(0x9e3779b97f4a7c15ull ^ seed) + index);
    // burn one value so nearby (seed, index) pairs decorrelate
    next_u64();
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal, Box-Muller with cached spare
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace projcurv
