#include "cubicwave/collocation.hpp"

#include <cmath>
#include <numbers>

namespace cubicwave::collocation {

using std::numbers::pi;

ChebSet chebyshev(int N) {
    ChebSet s;
    if (N == 0) {
        s.x = VectorXd::Ones(1);
        s.D = MatrixXd::Zero(1, 1);
        return s;
    }
    s.x.resize(N + 1);
    for (int j = 0; j <= N; ++j) s.x[j] = std::cos(pi * j / N);
    VectorXd c = VectorXd::Ones(N + 1);
    c[0] = 2.0;
    c[N] = 2.0;
    for (int j = 0; j <= N; ++j)
        if (j % 2 == 1) c[j] = -c[j];
    s.D.resize(N + 1, N + 1);
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j)
            if (i != j) s.D(i, j) = (c[i] / c[j]) / (s.x[i] - s.x[j]);
    for (int i = 0; i <= N; ++i) {
        s.D(i, i) = 0.0;
        s.D(i, i) = -s.D.row(i).sum();
    }
    return s;
}

VectorXd clenshaw_curtis(int N) {
    VectorXd w = VectorXd::Zero(N + 1);
    if (N == 0) {
        w[0] = 2.0;
        return w;
    }
    VectorXd theta(N + 1);
    for (int j = 0; j <= N; ++j) theta[j] = pi * j / N;
    VectorXd v = VectorXd::Ones(N - 1);
    if (N % 2 == 0) {
        w[0] = w[N] = 1.0 / (N * N - 1.0);
        for (int k = 1; k < N / 2; ++k)
            for (int j = 1; j < N; ++j)
                v[j - 1] -= 2.0 * std::cos(2.0 * k * theta[j]) / (4.0 * k * k - 1.0);
        for (int j = 1; j < N; ++j) v[j - 1] -= std::cos(N * theta[j]) / (N * N - 1.0);
    } else {
        w[0] = w[N] = 1.0 / (N * N);
        for (int k = 1; k <= (N - 1) / 2; ++k)
            for (int j = 1; j < N; ++j)
                v[j - 1] -= 2.0 * std::cos(2.0 * k * theta[j]) / (4.0 * k * k - 1.0);
    }
    for (int j = 1; j < N; ++j) w[j] = 2.0 * v[j - 1] / N;
    return w;
}

QuadRule gauss_legendre(int n) {
    QuadRule q;
    q.x.resize(n);
    q.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton from the Chebyshev-based initial guess
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        q.x[i] = -z;
        q.x[n - 1 - i] = z;
        q.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        q.w[n - 1 - i] = q.w[i];
    }
    return q;
}

MatrixXd lagrange_diff(const VectorXd& x) {
    const auto wb = barycentric_weights(x);
    const int n = static_cast<int>(x.size());
    MatrixXd D(n, n);
    for (int i = 0; i < n; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j < n; ++j)
            if (i != j) {
                D(i, j) = (wb[j] / wb[i]) / (x[i] - x[j]);
                rowsum += D(i, j);
            }
        D(i, i) = -rowsum;
    }
    return D;
}

VectorXd barycentric_weights(const VectorXd& x) {
    const int n = static_cast<int>(x.size());
    VectorXd w = VectorXd::Ones(n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k)
            if (k != j) w[j] *= (x[j] - x[k]);
        w[j] = 1.0 / w[j];
    }
    return w;
}

double barycentric_eval(const VectorXd& nodes, const VectorXd& weights, const VectorXd& values,
                        double t) {
    double num = 0.0, den = 0.0;
    for (int j = 0; j < nodes.size(); ++j) {
        const double d = t - nodes[j];
        if (d == 0.0) return values[j];
        const double c = weights[j] / d;
        num += c * values[j];
        den += c;
    }
    return num / den;
}

} // namespace cubicwave::collocation
