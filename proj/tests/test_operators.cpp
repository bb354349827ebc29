#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubicwave/operators.hpp"
#include "cubicwave/perturbations.hpp"

using namespace cubicwave;

TEST_CASE("L on constants") {
    const auto g = build_radial_grid(16);
    const FieldState psi0 = eval_on_grid(psi_pair_a(Rapidity{}), g);
    const FieldState out = apply_L_free(psi0);
    CHECK(out.u1.cwiseAbs().maxCoeff() < 1e-10);                      // -sqrt2 + sqrt2
    CHECK((out.u2.array() + 2.0 * kSqrt2).abs().maxCoeff() < 1e-9);   // -2 sqrt2

    FieldState c = FieldState::zero(g);
    c.u2.setConstant(3.5);
    const FieldState oc = apply_L_free(c);
    CHECK((oc.u1.array() - 3.5).abs().maxCoeff() < 1e-12);
    CHECK((oc.u2.array() + 7.0).abs().maxCoeff() < 1e-12);
}

TEST_CASE("L_prime at a = 0 multiplies by 6") {
    const auto g = build_radial_grid(16);
    Rng rng(1);
    const FieldState s = smooth_perturbation(g, rng.next_u64(), 8, 1.0);
    const FieldState out = apply_L_prime(Rapidity{}, s);
    CHECK(out.u1.cwiseAbs().maxCoeff() == 0.0);
    CHECK((out.u2 - 6.0 * s.u1).cwiseAbs().maxCoeff() < 1e-12);
    FieldState z = s;
    z.u1.setZero();
    CHECK(norm_H(apply_L_prime(Rapidity{}, z)) == 0.0);
}

TEST_CASE("L_prime is Lipschitz in a on sampled states") {
    const auto g = build_axisym_grid(12, 10);
    Rng rng(2);
    const double da = 0.01;
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const FieldState s = smooth_perturbation(g, rng.next_u64(), 8, 1.0);
        const FieldState d = apply_L_prime(Rapidity::axial(da), s) - apply_L_prime(Rapidity{}, s);
        worst = std::max(worst, norm_H(d) / norm_H(s));
    }
    CHECK(worst < 50.0 * da); // operator difference O(|a-b|)
    CHECK(worst > 1e-4 * da); // and genuinely first order, not zero
}

TEST_CASE("N and N_a") {
    const auto g = build_radial_grid(16);
    const FieldState psi0 = eval_on_grid(psi_pair_a(Rapidity{}), g);
    const FieldState n = apply_N(psi0);
    CHECK((n.u2.array() - 2.0 * kSqrt2).abs().maxCoeff() < 1e-12); // (sqrt2)^3
    CHECK(norm_H(apply_N(FieldState::zero(g))) == 0.0);

    // static identity L Psi_a + N(Psi_a) = 0
    CHECK(norm_H(apply_L_free(psi0) + n) < 1e-8);

    // N_a(0) = 0 and the three-term identity
    const Rapidity a = Rapidity::axial(0.2);
    const auto ga = build_axisym_grid(12, 10);
    CHECK(norm_H(apply_N_a(a, FieldState::zero(ga))) == 0.0);
    Rng rng(3);
    const FieldState phi = smooth_perturbation(ga, rng.next_u64(), 8, 0.1);
    const FieldState psi_a = eval_on_grid(psi_pair_a(a), ga);
    const FieldState three =
        apply_N(psi_a + phi) - apply_N(psi_a) - apply_L_prime(a, phi);
    CHECK(norm_H(three - apply_N_a(a, phi)) < 1e-12);
}

TEST_CASE("quadratic smallness of N_a") {
    const auto g = build_axisym_grid(12, 10);
    const Rapidity a = Rapidity::axial(0.1);
    Rng rng(4);
    for (const double h : {1e-2, 1e-3}) {
        const FieldState phi = smooth_perturbation(g, rng.next_u64(), 8, h);
        const double ratio = norm_H(apply_N_a(a, phi)) / (h * h);
        CHECK(ratio < 100.0);
    }
}

TEST_CASE("assembled matrix matches matrix-free action") {
    const auto g = build_axisym_grid(10, 8);
    const Rapidity a = Rapidity::axial(0.2);
    const OperatorMatrix op = assemble_matrix(a, g, OperatorKind::Linearized);
    const OperatorMatrix opf = assemble_matrix(Rapidity{}, g, OperatorKind::Free);
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        const FieldState s = smooth_perturbation(g, rng.next_u64(), 8, 1.0);
        CHECK(norm_H(op.apply(s) - (apply_L_free(s) + apply_L_prime(a, s))) < 1e-10);
        CHECK(norm_H(opf.apply(s) - apply_L_free(s)) < 1e-10);
    }
}

TEST_CASE("kernel and eigenvector actions of the assembled matrix") {
    const auto g = build_axisym_grid(16, 12);
    const OperatorMatrix op = assemble_matrix(Rapidity{}, g, OperatorKind::Linearized);
    const FieldState q = eval_on_grid(eigenfunction_q(Rapidity{}, 3), g);
    CHECK(norm_H(op.apply(q)) / norm_H(q) < 1e-6);
    const FieldState p = eval_on_grid(eigenfunction_p(Rapidity{}), g);
    CHECK(norm_H(op.apply(p) - p) / norm_H(p) < 1e-6);
}

TEST_CASE("static residual across boosts in the H norm") {
    const auto g = build_axisym_grid(16, 12);
    for (const double a3 : {0.0, 0.1, 0.3}) {
        const FieldState psi = eval_on_grid(psi_pair_a(Rapidity::axial(a3)), g);
        CHECK(norm_H(apply_L_free(psi) + apply_N(psi)) < 1e-7);
    }
}

TEST_CASE("linearization consistency as h -> 0") {
    const auto g = build_axisym_grid(12, 10);
    const Rapidity a = Rapidity::axial(0.1);
    const FieldState psi_a = eval_on_grid(psi_pair_a(a), g);
    Rng rng(6);
    for (const double h : {1e-2, 1e-3}) {
        FieldState phi = smooth_perturbation(g, rng.next_u64(), 8, h);
        const FieldState lin =
            apply_N(psi_a + phi) - apply_N(psi_a) - apply_L_prime(a, phi);
        CHECK(norm_H(lin) / (h * h) < 100.0);
    }
}

TEST_CASE("radial sector rejects nonzero rapidity") {
    const auto g = build_radial_grid(16);
    CHECK_THROWS_AS(assemble_matrix(Rapidity::axial(0.1), g, OperatorKind::Linearized),
                    UnsupportedRapidity);
    const auto ga = build_axisym_grid(10, 8);
    CHECK_THROWS_AS(assemble_matrix(Rapidity(Vec3(0.1, 0, 0)), ga, OperatorKind::Linearized),
                    UnsupportedRapidity);
}
