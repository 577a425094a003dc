#ifndef LAXLAB_SAMPLING_HPP
#define LAXLAB_SAMPLING_HPP

#include <cstdint>

#include "laxlab/elliptic.hpp"
#include "laxlab/phasespace.hpp"

namespace laxlab {

/// xoshiro256** seeded through splitmix64.  Fixed algorithm and constants so
/// reports are reproducible across platforms (documented in the README).
class Rng {
  public:
    explicit Rng(uint64_t seed);

    uint64_t next();
    /// Uniform in [a, b) from the top 53 bits.
    double uniform(double a, double b);
    /// Derive an independent, deterministic stream (for per-check streams).
    Rng fork(uint64_t salt) const;

  private:
    uint64_t s_[4];
};

/// q uniform in [-0.45, 0.45]^n rejected until pairwise separation exceeds
/// min_sep; p uniform in [-1, 1]^n.
PhasePoint sample_phase_point(Rng& rng, int n, double min_sep = 0.05);

/// Spectral parameter uniform in [0.1, 0.9] + i[0, 0.2], rejected near zeros
/// of sigma and theta^(0).
Complex sample_spectral(Rng& rng, const EllipticParams& par);

}  // namespace laxlab

#endif
