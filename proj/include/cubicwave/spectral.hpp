#pragma once

#include <complex>
#include <vector>

#include "cubicwave/operators.hpp"

namespace cubicwave {

using Complex = std::complex<double>;

/// Resolution-filtered spectrum of the discretized L_a on one sector.
struct SpectrumReport {
    Rapidity a;
    SectorKind sector = SectorKind::Radial;
    std::pair<int, int> N_coarse{0, 0}, N_fine{0, 0}; ///< (n_r, n_z) of the two grids
    std::vector<Complex> eigenvalues;                 ///< coarse-grid eigenvalues
    std::vector<bool> converged; ///< paired with a fine-grid eigenvalue within tol_conv
    double tol_conv = 1e-6;

    std::vector<Complex> converged_eigenvalues() const;
};

/// Full dense eigen-decomposition at two resolutions with nearest-neighbor
/// pairing; eigenvalues that agree within tol_conv count as converged.
SpectrumReport compute_spectrum(const Rapidity& a, const GridPtr& g, const GridPtr& g_fine,
                                double tol_conv = 1e-6);

struct GapReport {
    bool pass = false;
    bool vacuous = false; ///< no converged eigenvalues at all
    std::vector<Complex> violators;
};

/// Pass iff every converged eigenvalue is within tol_eig of {0,1} or has
/// Re < -1/2 + epsilon_tilde.
GapReport spectral_gap_check(const SpectrumReport& r, double epsilon_tilde, double tol_eig = 1e-5);

/// Rank-one spectral projection P u = right <left, u>_H / <left, right>_H.
/// The stored left vector is normalized so that <left, right>_H = 1.
struct RankOneProjection {
    FieldState right;
    FieldState left; ///< left eigenvector w.r.t. the H inner product
    double eigenvalue = 0.0;
    Rapidity a;

    double coefficient(const FieldState& u) const; ///< <left, u>_H
    FieldState apply(const FieldState& u) const;
    FieldState remove(const FieldState& u) const; ///< u - apply(u)
};

enum class ProjTarget { P, Q3 };

/// Eigenvector projection for the unstable (P, eigenvalue 1) or neutral
/// (Q3, eigenvalue 0, Axisym only) direction.
RankOneProjection projection_for(const Rapidity& a, const GridPtr& g, ProjTarget target);

enum class ContourCurve { gamma0, gamma1 };

/// Trapezoidal resolvent quadrature of (2 pi i)^{-1} contour-int R(z) dz over
/// gamma0 (radius (1-2 eps~)/3 about 0) or gamma1 (radius 1/2 about 1).
RankOneProjection contour_projection(const Rapidity& a, const GridPtr& g, ContourCurve curve,
                                     int n_quad, double epsilon_tilde = 0.1);

/// Raw dense eigenvalues of a matrix (LAPACK dgeev).  Throws EigenFailure.
std::vector<Complex> dense_eigenvalues(const MatrixXd& M);

/// Inverse iteration for the eigenvector of M nearest lambda0, seeded by v0.
VectorXd inverse_iterate(const MatrixXd& M, double lambda0, const VectorXd& v0, int iters = 6);

} // namespace cubicwave
