#pragma once

#include <functional>

#include "cubicwave/geometry.hpp"

namespace cubicwave {

inline const double kSqrt2 = 1.4142135623730951;

/// The four hyperbolic products A_mu(a) of the composed boost.
struct BoostCoefficients {
    double A0 = 1, A1 = 0, A2 = 0, A3 = 0;

    double dot(const Vec3& xi) const { return A1 * xi[0] + A2 * xi[1] + A3 * xi[2]; }
    double minkowski() const { return A0 * A0 - A1 * A1 - A2 * A2 - A3 * A3; }
};

BoostCoefficients coeffs_A(const Rapidity& a);

/// d A_mu / d a^j, j in {1,2,3}.
BoostCoefficients coeffs_A_deriv(const Rapidity& a, int j);

/// Pair of scalar fields on the unit ball, evaluated pointwise at xi.
struct PairField {
    std::function<double(const Vec3&)> f1, f2;
};

/// v_a(t,x) = sqrt2 / (A0 t - A_j x^j), the boosted family in the decay picture.
double v_a(const Rapidity& a, double t, const Vec3& x);

/// u_a(T,X) = sqrt2 / (A0 (-T) - A_j X^j), the blowup-picture family.
double u_a(const Rapidity& a, double T, const Vec3& X);

/// Static pair (psi_{a,1}, psi_{a,2}) of the first-order system.
PairField psi_pair_a(const Rapidity& a);

/// Eigenfunction p_a of the linearized operator at eigenvalue 1.
PairField eigenfunction_p(const Rapidity& a);

/// Eigenfunction q_{a,j} = d/da^j Psi_a at eigenvalue 0, j in {1,2,3}.
PairField eigenfunction_q(const Rapidity& a, int j);

/// Normal derivative of the family member at a Cartesian point:
/// nabla_n v = (t^2+|x|^2) dt v + 2 t x^j dj v + 2 t v.
double nabla_n(const Rapidity& a, double t, const Vec3& x);

} // namespace cubicwave
