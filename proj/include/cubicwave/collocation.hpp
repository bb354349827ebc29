#pragma once

#include <Eigen/Dense>

namespace cubicwave::collocation {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Chebyshev extreme points x_j = cos(j pi / N), j = 0..N, and the
/// differentiation matrix on them.
struct ChebSet {
    VectorXd x;
    MatrixXd D;
};
ChebSet chebyshev(int N);

/// Clenshaw-Curtis weights on the N+1 Chebyshev points for integrals on [-1,1].
VectorXd clenshaw_curtis(int N);

/// Gauss-Legendre nodes (ascending) and weights on [-1,1].
struct QuadRule {
    VectorXd x, w;
};
QuadRule gauss_legendre(int n);

/// Differentiation matrix on arbitrary distinct nodes (barycentric form).
MatrixXd lagrange_diff(const VectorXd& x);

/// Barycentric weights for interpolation on the given nodes.
VectorXd barycentric_weights(const VectorXd& x);

/// Evaluate the interpolant of (nodes, values) at point t.
double barycentric_eval(const VectorXd& nodes, const VectorXd& weights, const VectorXd& values,
                        double t);

} // namespace cubicwave::collocation
