#include "cubicwave/operators.hpp"

namespace cubicwave {

void check_sector_supports(const Grid& g, const Rapidity& a, const char* op) {
    if (g.sector == SectorKind::Radial && !a.is_zero())
        throw UnsupportedRapidity(std::string(op) + ": Radial sector supports a = 0 only");
    if (g.sector == SectorKind::Axisym && !a.is_axial())
        throw UnsupportedRapidity(std::string(op) +
                                  ": Axisym sector supports a along the x^3 axis only");
}

VectorXd psi1_on_grid(const Rapidity& a, const Grid& g) {
    const auto A = coeffs_A(a);
    const auto Adotxi = g.xi.col(0).array() * A.A1 + g.xi.col(1).array() * A.A2 +
                        g.xi.col(2).array() * A.A3;
    return kSqrt2 / (A.A0 - Adotxi);
}

FieldState apply_L_free(const FieldState& s) {
    const Grid& g = *s.grid;
    FieldState out = FieldState::zero(s.grid);
    out.u1 = -g.r_dr(s.u1) - s.u1 + s.u2;
    out.u2 = g.laplacian(s.u1) - g.r_dr(s.u2) - 2.0 * s.u2;
    return out;
}

FieldState apply_L_prime(const Rapidity& a, const FieldState& s) {
    check_sector_supports(*s.grid, a, "apply_L_prime");
    FieldState out = FieldState::zero(s.grid);
    const VectorXd psi1 = psi1_on_grid(a, *s.grid);
    out.u2 = 3.0 * psi1.array().square() * s.u1.array();
    return out;
}

FieldState apply_N(const FieldState& s) {
    FieldState out = FieldState::zero(s.grid);
    out.u2 = s.u1.array().cube();
    return out;
}

FieldState apply_N_a(const Rapidity& a, const FieldState& s) {
    check_sector_supports(*s.grid, a, "apply_N_a");
    FieldState out = FieldState::zero(s.grid);
    const VectorXd psi1 = psi1_on_grid(a, *s.grid);
    out.u2 = 3.0 * psi1.array() * s.u1.array().square() + s.u1.array().cube();
    return out;
}

FieldState OperatorMatrix::apply(const FieldState& s) const {
    if (s.grid.get() != grid.get())
        throw GridMismatch("OperatorMatrix::apply: state on a different grid");
    return stacked_to_state(grid, M * state_to_stacked(s));
}

OperatorMatrix assemble_matrix(const Rapidity& a, const GridPtr& g, OperatorKind kind) {
    check_sector_supports(*g, a, "assemble_matrix");
    const int n = g->nodes();
    OperatorMatrix op;
    op.grid = g;
    op.a = a;
    op.kind = kind;
    op.M.resize(2 * n, 2 * n);
    const MatrixXd RD = g->dense_r_dr();
    const MatrixXd I = MatrixXd::Identity(n, n);
    op.M.topLeftCorner(n, n) = -RD - I;
    op.M.topRightCorner(n, n) = I;
    op.M.bottomLeftCorner(n, n) = g->dense_laplacian();
    op.M.bottomRightCorner(n, n) = -RD - 2.0 * I;
    if (kind == OperatorKind::Linearized) {
        const VectorXd psi1 = psi1_on_grid(a, *g);
        op.M.bottomLeftCorner(n, n) += MatrixXd((3.0 * psi1.array().square()).matrix().asDiagonal());
    }
    return op;
}

FieldState stacked_to_state(const GridPtr& g, const VectorXd& v) {
    const int n = g->nodes();
    return {g, v.head(n), v.tail(n)};
}

VectorXd state_to_stacked(const FieldState& s) {
    VectorXd v(2 * s.grid->nodes());
    v << s.u1, s.u2;
    return v;
}

} // namespace cubicwave
