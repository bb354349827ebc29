#pragma once

#include <optional>

#include "cubicwave/diagnostics.hpp"

namespace cubicwave {

struct ThresholdConfig {
    EvolveConfig evolve;     ///< settings for each classification run
    double tol_s = 1e-10;    ///< bracket width target
    int max_iter = 60;
    int max_consecutive_ran = 8; ///< Inconclusive guard while the bracket is wide
};

struct ThresholdResult {
    FieldState perp_data;  ///< the ker-P0 component v
    double s_star = 0.0;   ///< coefficient of p_a at the threshold
    double bracket_width = 0.0;
    std::vector<std::pair<double, Outcome>> classifications;
    double tau_reached_at_star = 0.0;
    int orientation = +1;  ///< +1 if blowup lies above s_star
    EvolutionTrace star_trace; ///< the final midpoint run, states stored
};

/// Runs evolve on init and reports the outcome (Ran when no detector fires).
Outcome classify(const FieldState& init, const EvolveConfig& cfg);

/// Bisection along the p_a direction: init(s) = Psi_a + v + s p_a.
/// Requires determinate, differing classifications at the endpoints.
ThresholdResult bisect_threshold(const FieldState& v, double s_lo, double s_hi,
                                 const ThresholdConfig& cfg);

struct ManifoldSample {
    int index = 0;
    double s_star = 0.0;
    double bracket_width = 0.0;
    double tau_reached = 0.0;
    std::string error; ///< empty on success
};

struct ManifoldGraph {
    std::vector<ManifoldSample> samples;
    /// max over pairs of |s*_i - s*_j| / |v_i - v_j|_H
    double max_lipschitz_quotient = 0.0;
};

/// Batch bisection over ker-P0 states; per-item errors are collected and the
/// batch continues.
ManifoldGraph sample_manifold_graph(const std::vector<FieldState>& vs,
                                    const ThresholdConfig& cfg);

/// u minus its P (and optionally Q) spectral components.
FieldState remove_unstable_component(const FieldState& u, const RankOneProjection& proj_P,
                                     const RankOneProjection* proj_Q = nullptr);

} // namespace cubicwave
