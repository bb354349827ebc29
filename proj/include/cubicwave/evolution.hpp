#pragma once

#include "cubicwave/spectral.hpp"

namespace cubicwave {

enum class Outcome { Ran, BlowupDetected, DispersionDetected, NumericalFailure };

const char* outcome_name(Outcome o);
Outcome outcome_from_name(const std::string& s);

struct EvolveConfig {
    double tau_max = 10.0;
    double dtau = 1e-3;
    int store_stride = 10;  ///< keep every store_stride-th step's full state
    int series_stride = 1;  ///< cadence of the scalar time series
    double blowup_sup = 50.0 * kSqrt2;
    double disperse_norm = -1.0; ///< < 0 selects the default 0.05 |Psi_0|_H
    bool track_modulation = false;
    bool detectors = true;
    Rapidity base_a{};       ///< reference family member for Phi = Psi - Psi_a
    bool ref_family = true;  ///< false compares against the zero solution
};

struct EvolutionTrace {
    std::vector<double> times;   ///< series sample times, strictly increasing
    std::vector<double> h_norms; ///< |Phi(tau)|_H
    std::vector<double> sup_u1;  ///< max |psi_1|
    std::vector<double> mod_a;   ///< tracked a^3(tau); base value when tracking is off
    std::vector<double> stored_times;
    std::vector<FieldState> states;
    Outcome outcome = Outcome::Ran;
    double detector_time = 0.0; ///< firing time, or the final time reached
    Rapidity base_a{};
    bool ref_family = true;

    /// stored state nearest to tau, within half a storage interval
    const FieldState* state_near(double tau, double* stored_tau = nullptr) const;
    double mod_a_at(double tau) const;
};

/// Full nonlinear right-hand side L Psi + N(Psi).
FieldState rhs_full(const FieldState& s);

/// One classical RK4 step of the full nonlinear flow.
FieldState step_rk4(const FieldState& s, double dtau);

/// Integrate the nonlinear system from init until tau_max or a detector fires.
EvolutionTrace evolve(const FieldState& init, const EvolveConfig& cfg,
                      const RankOneProjection* q_gauge = nullptr);

enum class LinearKind { Free, Linearized };

/// Integrate the linear system d Phi = L Phi (Free) or L_a Phi (Linearized).
EvolutionTrace evolve_linear(const FieldState& init, const Rapidity& a, double tau_max,
                             double dtau, LinearKind kind = LinearKind::Linearized,
                             int series_stride = 10);

/// Least-squares modulation fit: argmin over a^3 of |s - Psi_a|_H by 1-d
/// Gauss-Newton.  Axisym only; throws FitDiverged after 50 iterations.
Rapidity track_modulation(const FieldState& s, double a3_seed = 0.0);

/// Gauge fit through the spectral projection: solves <l_q, s - Psi_a>_H = 0.
Rapidity track_modulation_gauge(const FieldState& s, const RankOneProjection& q_proj,
                                double a3_seed);

/// The modulation-equation integrand for da/dtau: with Phi = s - Psi_a,
///   adot <l_q, q_{a,3}> = <l_q, (L'_a - L'_{a_ref}) Phi + N_a(Phi)>,
/// where a_ref is the rapidity the projection was built at.  Components 1,2
/// vanish in the axisymmetric sector.
Vec3 modulation_rhs(const FieldState& s, const Rapidity& a, const RankOneProjection& q_proj);

/// Conservative explicit step bound 0.5 * (boundary cluster spacing).
double boundary_spacing_dtau_cap(const Grid& g);

/// |Psi_0|_H on this grid (used for the default dispersion threshold).
double psi0_norm(const GridPtr& g);

} // namespace cubicwave
