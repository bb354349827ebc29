#include "cubicwave/solutions.hpp"

#include <cmath>

namespace cubicwave {

BoostCoefficients coeffs_A(const Rapidity& a) {
    const double c1 = std::cosh(a[0]), s1 = std::sinh(a[0]);
    const double c2 = std::cosh(a[1]), s2 = std::sinh(a[1]);
    const double c3 = std::cosh(a[2]), s3 = std::sinh(a[2]);
    return {c1 * c2 * c3, s1 * c2 * c3, s2 * c3, s3};
}

BoostCoefficients coeffs_A_deriv(const Rapidity& a, int j) {
    const double c1 = std::cosh(a[0]), s1 = std::sinh(a[0]);
    const double c2 = std::cosh(a[1]), s2 = std::sinh(a[1]);
    const double c3 = std::cosh(a[2]), s3 = std::sinh(a[2]);
    switch (j) {
        case 1: return {s1 * c2 * c3, c1 * c2 * c3, 0.0, 0.0};
        case 2: return {c1 * s2 * c3, s1 * s2 * c3, c2 * c3, 0.0};
        case 3: return {c1 * c2 * s3, s1 * c2 * s3, s2 * s3, c3};
        default: throw OutOfDomain("axis index j must be 1, 2 or 3");
    }
}

namespace {

double checked_inverse(double denom) {
    if (denom <= kIntervalCutoff)
        throw PoleHit("family denominator = " + std::to_string(denom));
    return kSqrt2 / denom;
}

} // namespace

double v_a(const Rapidity& a, double t, const Vec3& x) {
    const auto A = coeffs_A(a);
    return checked_inverse(A.A0 * t - A.dot(x));
}

double u_a(const Rapidity& a, double T, const Vec3& X) {
    const auto A = coeffs_A(a);
    return checked_inverse(A.A0 * (-T) - A.dot(X));
}

PairField psi_pair_a(const Rapidity& a) {
    const auto A = coeffs_A(a);
    return {
        [A](const Vec3& xi) { return kSqrt2 / (A.A0 - A.dot(xi)); },
        [A](const Vec3& xi) {
            const double d = A.A0 - A.dot(xi);
            return kSqrt2 * A.A0 / (d * d);
        },
    };
}

PairField eigenfunction_p(const Rapidity& a) {
    const auto A = coeffs_A(a);
    return {
        [A](const Vec3& xi) {
            const double d = A.A0 - A.dot(xi);
            return A.A0 / (d * d);
        },
        [A](const Vec3& xi) {
            const double d = A.A0 - A.dot(xi);
            return 2.0 * A.A0 * A.A0 / (d * d * d);
        },
    };
}

PairField eigenfunction_q(const Rapidity& a, int j) {
    const auto A = coeffs_A(a);
    const auto dA = coeffs_A_deriv(a, j);
    // d/da^j of (sqrt2/D, sqrt2 A0/D^2) with D = A0 - A.xi:
    //   q1 = -sqrt2 D'/D^2,  q2 = sqrt2 (A0' D - 2 A0 D')/D^3.
    return {
        [A, dA](const Vec3& xi) {
            const double d = A.A0 - A.dot(xi);
            const double dd = dA.A0 - dA.dot(xi);
            return -kSqrt2 * dd / (d * d);
        },
        [A, dA](const Vec3& xi) {
            const double d = A.A0 - A.dot(xi);
            const double dd = dA.A0 - dA.dot(xi);
            return kSqrt2 * (dA.A0 * d - 2.0 * A.A0 * dd) / (d * d * d);
        },
    };
}

double nabla_n(const Rapidity& a, double t, const Vec3& x) {
    const auto A = coeffs_A(a);
    const double e = A.A0 * t - A.dot(x);
    if (e <= kIntervalCutoff) throw PoleHit("family denominator = " + std::to_string(e));
    const double v = kSqrt2 / e;
    const double dt_v = -kSqrt2 * A.A0 / (e * e);
    const Vec3 grad_v = kSqrt2 / (e * e) * Vec3(A.A1, A.A2, A.A3);
    return (t * t + x.squaredNorm()) * dt_v + 2.0 * t * x.dot(grad_v) + 2.0 * t * v;
}

} // namespace cubicwave
