#pragma once

#include <span>

#include "cubicwave/evolution.hpp"

namespace cubicwave {

/// Norms of Definition-style hyperboloidal slices Sigma_T.
struct SigmaTNorms {
    double l2 = 0, h1dot = 0, h1 = 0, nabla_n_l2 = 0;
};

/// Sigma_T norms of the perturbation v - v_a computed from the stored
/// similarity-frame state at tau = -log(-T).  Throws NoStoredState.
SigmaTNorms sigma_T_norms(const EvolutionTrace& tr, double T);

/// Closed-form family member norms on Sigma_T via similarity-frame quadrature.
SigmaTNorms sigma_T_norms_family(const Rapidity& a, const GridPtr& g, double T);

/// Same quantities by direct Cartesian quadrature over X in B_{|T|}
/// (independent of the collocation grid; n_quad Gauss-Legendre points).
SigmaTNorms sigma_T_norms_family_cartesian(const Rapidity& a, double T, int n_quad = 64);

/// L^p norm of the family member over the truncated cone
/// {(s,x) : s in (t,2t), |x| < (1-delta) s}, solid-angle-averaged measure.
/// p must lie in (8/3, 6].
double strichartz_family(const Rapidity& a, double t, double delta, double p, int n_quad = 64);

/// Same functional for an evolved field, through the similarity-frame
/// pullback over S in (-1/(t(2 delta - delta^2)), -1/(2t)) with Jacobian
/// weight |S|^{p-5} (1-|Y|^2)^{p-4} on |Y| <= 1-delta.  When sub_a is given,
/// psi_{a,1} is subtracted from the stored first component (perturbation
/// norms); otherwise the full field enters.
double strichartz_trace(const EvolutionTrace& tr, double t, double delta, double p,
                        const Rapidity* sub_a = nullptr, int n_quad = 64);

struct DecayFit {
    double rate = 0;   ///< fitted exponent of exp(-rate * x)
    double window_lo = 0, window_hi = 0;
    double r2 = 0;
};

/// Log-linear least squares of log(values) against times on the window.
/// rate = -slope.  Throws NonPositiveValues.
DecayFit fit_decay(std::span<const double> times, std::span<const double> values,
                   double window_lo, double window_hi);

/// Power-law variant: regresses against log(times); rate is the exponent of
/// times^{-rate}.
DecayFit fit_decay_power(std::span<const double> times, std::span<const double> values,
                         double window_lo, double window_hi);

} // namespace cubicwave
