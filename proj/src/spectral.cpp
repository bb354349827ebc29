#include "cubicwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <lapacke.h>

namespace cubicwave {

std::vector<Complex> dense_eigenvalues(const MatrixXd& M) {
    const int n = static_cast<int>(M.rows());
    MatrixXd A = M; // dgeev destroys its input
    std::vector<double> wr(n), wi(n);
    const int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, A.data(), n, wr.data(),
                                   wi.data(), nullptr, 1, nullptr, 1);
    if (info != 0) throw EigenFailure("dgeev returned info = " + std::to_string(info));
    std::vector<Complex> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = Complex(wr[i], wi[i]);
    return ev;
}

VectorXd inverse_iterate(const MatrixXd& M, double lambda0, const VectorXd& v0, int iters) {
    // small real shift keeps the factorization nonsingular at an exact eigenvalue
    const MatrixXd shifted =
        M - (lambda0 + 1e-9) * MatrixXd::Identity(M.rows(), M.cols());
    const Eigen::PartialPivLU<MatrixXd> lu(shifted);
    VectorXd v = v0 / v0.norm();
    for (int it = 0; it < iters; ++it) {
        v = lu.solve(v);
        const double n = v.norm();
        if (!(n > 0.0) || !v.allFinite())
            throw EigenFailure("inverse iteration broke down near lambda = " +
                               std::to_string(lambda0));
        v /= n;
    }
    return v;
}

std::vector<Complex> SpectrumReport::converged_eigenvalues() const {
    std::vector<Complex> out;
    for (size_t i = 0; i < eigenvalues.size(); ++i)
        if (converged[i]) out.push_back(eigenvalues[i]);
    return out;
}

SpectrumReport compute_spectrum(const Rapidity& a, const GridPtr& g, const GridPtr& g_fine,
                                double tol_conv) {
    if (g->sector != g_fine->sector)
        throw GridMismatch("compute_spectrum: grids on different sectors");
    if (g_fine->n_r <= g->n_r || (g->sector == SectorKind::Axisym && g_fine->n_z <= g->n_z))
        throw BadResolution("compute_spectrum: g_fine must be strictly finer");
    check_sector_supports(*g, a, "compute_spectrum");

    const auto coarse = dense_eigenvalues(assemble_matrix(a, g, OperatorKind::Linearized).M);
    const auto fine = dense_eigenvalues(assemble_matrix(a, g_fine, OperatorKind::Linearized).M);

    SpectrumReport rep;
    rep.a = a;
    rep.sector = g->sector;
    rep.N_coarse = {g->n_r, g->n_z};
    rep.N_fine = {g_fine->n_r, g_fine->n_z};
    rep.tol_conv = tol_conv;
    rep.eigenvalues = coarse;
    rep.converged.resize(coarse.size());
    for (size_t i = 0; i < coarse.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& zf : fine) best = std::min(best, std::abs(coarse[i] - zf));
        rep.converged[i] = best < tol_conv;
    }
    return rep;
}

GapReport spectral_gap_check(const SpectrumReport& r, double epsilon_tilde, double tol_eig) {
    if (!(epsilon_tilde > 0.0 && epsilon_tilde < 0.5))
        throw ConfigError("epsilon_tilde must lie in (0, 1/2)");
    GapReport rep;
    rep.vacuous = true;
    rep.pass = true;
    for (size_t i = 0; i < r.eigenvalues.size(); ++i) {
        if (!r.converged[i]) continue;
        rep.vacuous = false;
        const Complex z = r.eigenvalues[i];
        const bool near_symmetry = std::abs(z - Complex(0, 0)) < tol_eig ||
                                   std::abs(z - Complex(1, 0)) < tol_eig;
        if (!near_symmetry && z.real() >= -0.5 + epsilon_tilde) {
            rep.pass = false;
            rep.violators.push_back(z);
        }
    }
    return rep;
}

double RankOneProjection::coefficient(const FieldState& u) const {
    return inner_product_H(left, u);
}

FieldState RankOneProjection::apply(const FieldState& u) const {
    check_same_grid(u, right, "RankOneProjection::apply");
    return coefficient(u) * right;
}

FieldState RankOneProjection::remove(const FieldState& u) const { return u - apply(u); }

namespace {

// solve G w = y blockwise (G is block-diagonal over the two components)
FieldState gram_solve(const GridPtr& g, const Eigen::LDLT<MatrixXd>& g11,
                      const VectorXd& y1, const VectorXd& y2) {
    FieldState out = FieldState::zero(g);
    out.u1 = g11.solve(y1);
    out.u2 = (y2.array() / g->w_vol.array()).matrix();
    return out;
}

RankOneProjection finalize_projection(const Rapidity& a, double eigenvalue,
                                      const FieldState& seed_right, FieldState right,
                                      FieldState left, const char* who) {
    // scale-free orientation and normalization <left, right>_H = 1
    const double align = inner_product_H(right, seed_right);
    if (align < 0.0) right *= -1.0;
    right *= 1.0 / norm_H(right);
    const double cos_sim =
        inner_product_H(right, seed_right) / (norm_H(right) * norm_H(seed_right));
    if (!(cos_sim > 0.999))
        throw EigenvalueNotIsolated(std::string(who) + ": computed eigenvector matches the "
                                    "closed form with cosine similarity " +
                                    std::to_string(cos_sim));
    const double pairing = inner_product_H(left, right);
    if (std::abs(pairing) < 1e-12)
        throw EigenvalueNotIsolated(std::string(who) + ": left/right pairing degenerate");
    left *= 1.0 / pairing;
    RankOneProjection proj;
    proj.right = std::move(right);
    proj.left = std::move(left);
    proj.eigenvalue = eigenvalue;
    proj.a = a;
    return proj;
}

} // namespace

RankOneProjection projection_for(const Rapidity& a, const GridPtr& g, ProjTarget target) {
    check_sector_supports(*g, a, "projection_for");
    if (target == ProjTarget::Q3 && g->sector != SectorKind::Axisym)
        throw SectorUnsupported("projection_for: Q3 requires the Axisym sector");

    const double lambda = target == ProjTarget::P ? 1.0 : 0.0;
    const FieldState seed =
        eval_on_grid(target == ProjTarget::P ? eigenfunction_p(a) : eigenfunction_q(a, 3), g);

    const OperatorMatrix op = assemble_matrix(a, g, OperatorKind::Linearized);
    const VectorXd vr = inverse_iterate(op.M, lambda, state_to_stacked(seed));
    FieldState right = stacked_to_state(g, vr);

    // left eigenvector: Euclidean left vector of M, mapped through the Gram inverse
    const VectorXd yl = inverse_iterate(op.M.transpose(), lambda, state_to_stacked(seed));
    const Eigen::LDLT<MatrixXd> g11(g->gram11());
    const int n = g->nodes();
    FieldState left = gram_solve(g, g11, yl.head(n), yl.tail(n));

    return finalize_projection(a, lambda, seed, std::move(right), std::move(left),
                               "projection_for");
}

RankOneProjection contour_projection(const Rapidity& a, const GridPtr& g, ContourCurve curve,
                                     int n_quad, double epsilon_tilde) {
    check_sector_supports(*g, a, "contour_projection");
    const double center = curve == ContourCurve::gamma1 ? 1.0 : 0.0;
    const double radius =
        curve == ContourCurve::gamma1 ? 0.5 : (1.0 - 2.0 * epsilon_tilde) / 3.0;
    const double lambda = center; // enclosed eigenvalue

    const OperatorMatrix op = assemble_matrix(a, g, OperatorKind::Linearized);
    const int n2 = static_cast<int>(op.M.rows());
    const FieldState seed_p = eval_on_grid(eigenfunction_p(a), g);
    const FieldState seed =
        curve == ContourCurve::gamma1 || g->sector == SectorKind::Radial
            ? seed_p
            : eval_on_grid(eigenfunction_q(a, 3), g);

    // trapezoid on z(t) = c + rho e^{2 pi i t}: (1/n) sum R(z_k) rho e^{2 pi i t_k}
    Eigen::VectorXcd acc_r = Eigen::VectorXcd::Zero(n2);
    Eigen::VectorXcd acc_l = Eigen::VectorXcd::Zero(n2);
    const Eigen::VectorXcd seed_c = state_to_stacked(seed).cast<Complex>();
    for (int k = 0; k < n_quad; ++k) {
        const double th = 2.0 * std::numbers::pi * k / n_quad;
        const Complex w = radius * std::exp(Complex(0, th));
        const Complex z = center + w;
        Eigen::MatrixXcd A = (-op.M).cast<Complex>();
        A.diagonal().array() += z;
        const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
        const Eigen::VectorXcd xr = lu.solve(seed_c);
        const Eigen::VectorXcd xl = lu.transpose().solve(seed_c);
        if (!xr.allFinite() || !xl.allFinite())
            throw ResolventSingular("resolvent solve failed at quadrature node " +
                                    std::to_string(k));
        acc_r += w * xr;
        acc_l += w * xl;
    }
    acc_r /= static_cast<double>(n_quad);
    acc_l /= static_cast<double>(n_quad);

    FieldState right = stacked_to_state(g, acc_r.real());
    const VectorXd yl = acc_l.real();
    const Eigen::LDLT<MatrixXd> g11(g->gram11());
    const int n = g->nodes();
    FieldState left = gram_solve(g, g11, yl.head(n), yl.tail(n));

    const FieldState match_seed =
        curve == ContourCurve::gamma1 ? seed_p : eval_on_grid(eigenfunction_q(a, 3), g);
    if (curve == ContourCurve::gamma0 && g->sector == SectorKind::Radial) {
        // no kernel mode in the spherically symmetric sector: report the (~0) operator
        RankOneProjection proj;
        proj.right = std::move(right);
        proj.left = std::move(left);
        proj.eigenvalue = 0.0;
        proj.a = a;
        return proj;
    }
    return finalize_projection(a, lambda, match_seed, std::move(right), std::move(left),
                               "contour_projection");
}

} // namespace cubicwave
