#pragma once

#include <cstdint>
#include <random>

namespace ballmodes {

/// Deterministic uniform doubles on top of mt19937_64. The engine's output
/// sequence is pinned by the standard; the explicit 53-bit mapping avoids the
/// implementation-defined std distributions, so results are identical across
/// platforms and toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace ballmodes
