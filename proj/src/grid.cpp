#include "cubicwave/grid.hpp"

#include <cmath>
#include <numbers>

namespace cubicwave {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapRow = Eigen::Map<const RowMat>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;

// columns reversed (the mu flip of the joint parity)
RowMat flip_cols(const Eigen::Ref<const RowMat>& F) { return F.rowwise().reverse(); }

MatrixXd kron(const MatrixXd& A, const MatrixXd& B) {
    MatrixXd K(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

} // namespace

const char* sector_name(SectorKind s) {
    return s == SectorKind::Radial ? "radial" : "axisym";
}

GridPtr build_radial_grid(int n_r) {
    if (n_r < 8 || n_r % 2 != 0)
        throw BadResolution("radial grid needs n_r >= 8 and even, got " + std::to_string(n_r));
    auto g = std::shared_ptr<Grid>(new Grid());
    g->sector = SectorKind::Radial;
    g->n_r = n_r;
    g->n_z = 1;

    const int N = 2 * n_r - 1;
    const auto cheb = collocation::chebyshev(N);
    g->r = cheb.x.head(n_r);
    g->mu = VectorXd::Ones(1);
    g->wmu = VectorXd::Constant(1, 2.0);

    const VectorXd wcc = collocation::clenshaw_curtis(N);
    g->w_vol = (kFourPi * wcc.head(n_r).array() * g->r.array().square()).matrix();
    g->w_bdy = VectorXd::Zero(n_r);
    g->w_bdy[0] = kFourPi;

    const MatrixXd D2 = cheb.D * cheb.D;
    g->Ar = cheb.D.topLeftCorner(n_r, n_r);
    g->Arr = D2.topLeftCorner(n_r, n_r);
    g->Br.resize(n_r, n_r);
    g->Brr.resize(n_r, n_r);
    for (int j = 0; j < n_r; ++j) {
        g->Br.col(j) = cheb.D.col(N - j).head(n_r);
        g->Brr.col(j) = D2.col(N - j).head(n_r);
    }
    g->Dmu = MatrixXd::Zero(1, 1);
    g->Dmu2 = MatrixXd::Zero(1, 1);

    g->R = g->r;
    g->MU = g->mu.replicate(n_r, 1);
    g->xi.resize(n_r, 3);
    for (int i = 0; i < n_r; ++i) g->xi.row(i) = Vec3(0, 0, g->r[i]).transpose();
    return g;
}

GridPtr build_axisym_grid(int n_r, int n_z) {
    if (n_r < 8 || n_z < 8)
        throw BadResolution("axisym grid needs n_r >= 8 and n_z >= 8, got (" +
                            std::to_string(n_r) + ", " + std::to_string(n_z) + ")");
    auto g = std::shared_ptr<Grid>(new Grid());
    g->sector = SectorKind::Axisym;
    g->n_r = n_r;
    g->n_z = n_z;

    const int N = 2 * n_r - 1;
    const auto cheb = collocation::chebyshev(N);
    g->r = cheb.x.head(n_r);
    const auto gl = collocation::gauss_legendre(n_z);
    g->mu = gl.x;
    g->wmu = gl.w;

    const VectorXd wcc = collocation::clenshaw_curtis(N);
    g->w_vol.resize(n_r * n_z);
    g->w_bdy = VectorXd::Zero(n_r * n_z);
    g->R.resize(n_r * n_z);
    g->MU.resize(n_r * n_z);
    g->xi.resize(n_r * n_z, 3);
    for (int i = 0; i < n_r; ++i)
        for (int k = 0; k < n_z; ++k) {
            const int id = i * n_z + k;
            g->w_vol[id] = kTwoPi * wcc[i] * g->r[i] * g->r[i] * gl.w[k];
            g->R[id] = g->r[i];
            g->MU[id] = g->mu[k];
            const double s = std::sqrt(std::max(0.0, 1.0 - g->mu[k] * g->mu[k]));
            g->xi.row(id) = Vec3(g->r[i] * s, 0.0, g->r[i] * g->mu[k]).transpose();
        }
    for (int k = 0; k < n_z; ++k) g->w_bdy[k] = kTwoPi * gl.w[k];

    const MatrixXd D2 = cheb.D * cheb.D;
    g->Ar = cheb.D.topLeftCorner(n_r, n_r);
    g->Arr = D2.topLeftCorner(n_r, n_r);
    g->Br.resize(n_r, n_r);
    g->Brr.resize(n_r, n_r);
    for (int j = 0; j < n_r; ++j) {
        g->Br.col(j) = cheb.D.col(N - j).head(n_r);
        g->Brr.col(j) = D2.col(N - j).head(n_r);
    }
    g->Dmu = collocation::lagrange_diff(g->mu);
    g->Dmu2 = g->Dmu * g->Dmu;
    return g;
}

VectorXd Grid::dr(const VectorXd& f) const {
    MapRow F(f.data(), n_r, n_z);
    RowMat out = Ar * F + Br * flip_cols(F);
    return Eigen::Map<VectorXd>(out.data(), nodes());
}

VectorXd Grid::drr(const VectorXd& f) const {
    MapRow F(f.data(), n_r, n_z);
    RowMat out = Arr * F + Brr * flip_cols(F);
    return Eigen::Map<VectorXd>(out.data(), nodes());
}

VectorXd Grid::dmu(const VectorXd& f) const {
    if (sector == SectorKind::Radial) return VectorXd::Zero(nodes());
    MapRow F(f.data(), n_r, n_z);
    RowMat out = F * Dmu.transpose();
    return Eigen::Map<VectorXd>(out.data(), nodes());
}

VectorXd Grid::r_dr(const VectorXd& f) const { return R.cwiseProduct(dr(f)); }

VectorXd Grid::laplacian(const VectorXd& f) const {
    VectorXd out = drr(f) + (2.0 * dr(f).array() / R.array()).matrix();
    if (sector == SectorKind::Axisym) {
        MapRow F(f.data(), n_r, n_z);
        RowMat ang = F * Dmu2.transpose();
        ang = ang.array().rowwise() * (1.0 - mu.array().square()).transpose();
        RowMat ang1 = F * Dmu.transpose();
        ang1 = ang1.array().rowwise() * (2.0 * mu.array()).transpose();
        ang -= ang1;
        const Eigen::Map<VectorXd> angv(ang.data(), nodes());
        out += (angv.array() / R.array().square()).matrix();
    }
    return out;
}

VectorXd Grid::d_xi3(const VectorXd& f) const {
    VectorXd out = MU.cwiseProduct(dr(f));
    if (sector == SectorKind::Axisym)
        out += ((1.0 - MU.array().square()) / R.array() * dmu(f).array()).matrix();
    return out;
}

MatrixXd Grid::dense_dr() const {
    MatrixXd flip = MatrixXd::Zero(n_z, n_z);
    for (int k = 0; k < n_z; ++k) flip(k, n_z - 1 - k) = 1.0;
    return kron(Ar, MatrixXd::Identity(n_z, n_z)) + kron(Br, flip);
}

MatrixXd Grid::dense_r_dr() const { return R.asDiagonal() * dense_dr(); }

MatrixXd Grid::dense_laplacian() const {
    MatrixXd flip = MatrixXd::Zero(n_z, n_z);
    for (int k = 0; k < n_z; ++k) flip(k, n_z - 1 - k) = 1.0;
    const MatrixXd I_z = MatrixXd::Identity(n_z, n_z);
    MatrixXd Dr = kron(Ar, I_z) + kron(Br, flip);
    MatrixXd Drr = kron(Arr, I_z) + kron(Brr, flip);
    MatrixXd L = Drr + VectorXd(2.0 / R.array()).asDiagonal() * Dr;
    if (sector == SectorKind::Axisym) {
        const MatrixXd Lmu = (1.0 - mu.array().square()).matrix().asDiagonal() * Dmu2 -
                             (2.0 * mu.array()).matrix().asDiagonal() * Dmu;
        L += VectorXd(1.0 / R.array().square()).asDiagonal() *
             kron(MatrixXd::Identity(n_r, n_r), Lmu);
    }
    return L;
}

MatrixXd Grid::dense_d_xi3() const {
    MatrixXd D = MU.asDiagonal() * dense_dr();
    if (sector == SectorKind::Axisym)
        D += ((1.0 - MU.array().square()) / R.array()).matrix().asDiagonal() *
             kron(MatrixXd::Identity(n_r, n_r), Dmu);
    return D;
}

MatrixXd Grid::gram11() const {
    const MatrixXd Dr = dense_dr();
    MatrixXd G = Dr.transpose() * w_vol.asDiagonal() * Dr;
    if (sector == SectorKind::Axisym) {
        const MatrixXd Dm = kron(MatrixXd::Identity(n_r, n_r), Dmu);
        const VectorXd w_ang =
            (w_vol.array() * (1.0 - MU.array().square()) / R.array().square()).matrix();
        G += Dm.transpose() * w_ang.asDiagonal() * Dm;
    }
    G += MatrixXd(w_bdy.asDiagonal());
    return G;
}

MatrixXd Grid::gram22() const { return MatrixXd(w_vol.asDiagonal()); }

FieldState& FieldState::operator+=(const FieldState& o) {
    u1 += o.u1;
    u2 += o.u2;
    return *this;
}
FieldState& FieldState::operator-=(const FieldState& o) {
    u1 -= o.u1;
    u2 -= o.u2;
    return *this;
}
FieldState& FieldState::operator*=(double c) {
    u1 *= c;
    u2 *= c;
    return *this;
}

void check_same_grid(const FieldState& x, const FieldState& y, const char* op) {
    if (x.grid.get() != y.grid.get())
        throw GridMismatch(std::string(op) + ": states live on different grids");
}

double inner_product_H(const FieldState& x, const FieldState& y) {
    check_same_grid(x, y, "inner_product_H");
    const Grid& g = *x.grid;
    double s = g.w_vol.dot(g.dr(x.u1).cwiseProduct(g.dr(y.u1)));
    if (g.sector == SectorKind::Axisym) {
        const VectorXd w_ang =
            (g.w_vol.array() * (1.0 - g.MU.array().square()) / g.R.array().square()).matrix();
        s += w_ang.dot(g.dmu(x.u1).cwiseProduct(g.dmu(y.u1)));
    }
    s += g.w_bdy.dot(x.u1.cwiseProduct(y.u1));
    s += g.w_vol.dot(x.u2.cwiseProduct(y.u2));
    return s;
}

FieldState eval_on_grid(const PairField& f, const GridPtr& g) {
    FieldState s = FieldState::zero(g);
    for (int i = 0; i < g->nodes(); ++i) {
        const Vec3 xi = g->xi.row(i).transpose();
        s.u1[i] = f.f1(xi);
        s.u2[i] = f.f2(xi);
    }
    if (!s.finite()) throw PoleHit("field not finite on the grid");
    return s;
}

double norm_H1L2(const FieldState& x) {
    const Grid& g = *x.grid;
    double s = g.w_vol.dot(g.dr(x.u1).cwiseAbs2());
    if (g.sector == SectorKind::Axisym) {
        const VectorXd w_ang =
            (g.w_vol.array() * (1.0 - g.MU.array().square()) / g.R.array().square()).matrix();
        s += w_ang.dot(g.dmu(x.u1).cwiseAbs2());
    }
    s += g.w_vol.dot(x.u1.cwiseAbs2());
    s += g.w_vol.dot(x.u2.cwiseAbs2());
    return std::sqrt(s);
}

} // namespace cubicwave
