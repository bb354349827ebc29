#pragma once

#include "cubicwave/grid.hpp"

namespace cubicwave {

enum class OperatorKind { Free, Linearized };

/// Dense discretization of the free operator or of L_a = L + L'_a.
struct OperatorMatrix {
    GridPtr grid;
    Rapidity a;
    OperatorKind kind = OperatorKind::Free;
    MatrixXd M; ///< (2 nodes)^2, acting on stacked [u1; u2]

    VectorXd apply(const VectorXd& stacked) const { return M * stacked; }
    FieldState apply(const FieldState& s) const;
};

/// Checks that the grid's sector supports the rapidity (Radial: a = 0,
/// Axisym: a along the x^3 axis).  Throws UnsupportedRapidity.
void check_sector_supports(const Grid& g, const Rapidity& a, const char* op);

/// Free operator: ( -xi.grad u1 - u1 + u2,  lap u1 - xi.grad u2 - 2 u2 ).
FieldState apply_L_free(const FieldState& s);

/// Potential part of the linearization: (0, 3 psi_{a,1}^2 u1).
FieldState apply_L_prime(const Rapidity& a, const FieldState& s);

/// Nonlinearity (0, u1^3).
FieldState apply_N(const FieldState& s);

/// Remainder nonlinearity around Psi_a: (0, 3 psi_{a,1} u1^2 + u1^3).
FieldState apply_N_a(const Rapidity& a, const FieldState& s);

OperatorMatrix assemble_matrix(const Rapidity& a, const GridPtr& g, OperatorKind kind);

/// psi_{a,1} evaluated on the grid nodes (the multiplier of L'_a).
VectorXd psi1_on_grid(const Rapidity& a, const Grid& g);

FieldState stacked_to_state(const GridPtr& g, const VectorXd& v);
VectorXd state_to_stacked(const FieldState& s);

} // namespace cubicwave
