#pragma once

#include <cstdint>

#include "cubicwave/grid.hpp"

namespace cubicwave {

/// Deterministic splitmix64 stream (identical across platforms).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    double uniform();                       ///< [0, 1)
    double symmetric() { return 2.0 * uniform() - 1.0; } ///< [-1, 1)

  private:
    std::uint64_t state_;
};

/// Truncated even-Chebyshev series with seeded coefficients decaying like
/// decay^{-k}; the CLI default recipe uses decay = 2.
VectorXd chebyshev_bump(const Grid& g, Rng& rng, int modes, double decay);

/// Smooth seeded perturbation in both components, scaled to |.|_H = amplitude.
FieldState smooth_perturbation(const GridPtr& g, std::uint64_t seed, int modes,
                               double amplitude, double decay = 2.0);

/// Near-boundary tail profile (1 - r^2)^alpha in the first component,
/// scaled to |.|_H = amplitude; alpha > 1/2 keeps it in H^1(B).  This is the
/// data class whose evolutions sustain energy influx from the tail and show
/// the theorem-scale slow decay.
FieldState tail_perturbation(const GridPtr& g, double alpha, double amplitude);

/// Rough-in-H^1 x L^2 seeded perturbation: coefficients (k+1)^{-2} for u1 and
/// (k+1)^{-1} for u2 over a fixed number of modes, scaled to |.|_H = amplitude.
/// The mode count is resolution-independent so refining the grid leaves the
/// data unchanged.
FieldState rough_perturbation(const GridPtr& g, std::uint64_t seed, double amplitude,
                              int modes = 24);

} // namespace cubicwave
