#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubicwave/perturbations.hpp"
#include "cubicwave/spectral.hpp"

using namespace cubicwave;

namespace {

bool contains_near(const std::vector<Complex>& evs, Complex z, double tol) {
    for (const auto& e : evs)
        if (std::abs(e - z) < tol) return true;
    return false;
}

} // namespace

TEST_CASE("radial spectrum at a = 0") {
    const auto rep = compute_spectrum(Rapidity{}, build_radial_grid(16), build_radial_grid(24));
    const auto conv = rep.converged_eigenvalues();
    CHECK(contains_near(conv, {1.0, 0.0}, 1e-8));
    // the kernel modes xi^j are odd and absent from the spherical sector
    for (const auto& z : conv) {
        const bool is_one = std::abs(z - Complex(1, 0)) < 1e-8;
        if (!is_one) CHECK(z.real() < -0.4);
    }
    CHECK_FALSE(contains_near(conv, {0.0, 0.0}, 1e-6));
}

TEST_CASE("axisym spectrum contains {0,1} at a = 0 and a = 0.2") {
    const auto g = build_axisym_grid(12, 10);
    const auto gf = build_axisym_grid(16, 14);
    for (const double a3 : {0.0, 0.2}) {
        const auto rep = compute_spectrum(Rapidity::axial(a3), g, gf);
        const auto conv = rep.converged_eigenvalues();
        CHECK(contains_near(conv, {0.0, 0.0}, 1e-6));
        CHECK(contains_near(conv, {1.0, 0.0}, 1e-6));
        for (const auto& z : conv) {
            const bool symmetry = std::abs(z) < 1e-5 || std::abs(z - Complex(1, 0)) < 1e-5;
            if (!symmetry) CHECK(z.real() < -0.3);
        }
    }
}

TEST_CASE("eigenvalues 0 and 1 persist across the boost family") {
    const auto g = build_axisym_grid(12, 10);
    const auto gf = build_axisym_grid(16, 14);
    for (const double a3 : {0.0, 0.1, 0.2, 0.3}) {
        const auto conv =
            compute_spectrum(Rapidity::axial(a3), g, gf).converged_eigenvalues();
        double d0 = 1e300, d1 = 1e300;
        for (const auto& z : conv) {
            d0 = std::min(d0, std::abs(z));
            d1 = std::min(d1, std::abs(z - Complex(1, 0)));
        }
        CHECK(d0 < 1e-5);
        CHECK(d1 < 1e-5);
    }
}

TEST_CASE("gap check verdicts") {
    const auto rep = compute_spectrum(Rapidity{}, build_radial_grid(16), build_radial_grid(24));
    CHECK(spectral_gap_check(rep, 0.1).pass);

    SpectrumReport synth = rep;
    synth.eigenvalues.push_back({0.5, 0.0});
    synth.converged.push_back(true);
    const auto bad = spectral_gap_check(synth, 0.1);
    CHECK_FALSE(bad.pass);
    REQUIRE(bad.violators.size() == 1);
    CHECK(bad.violators[0].real() == doctest::Approx(0.5));

    SpectrumReport empty = rep;
    std::fill(empty.converged.begin(), empty.converged.end(), false);
    const auto vac = spectral_gap_check(empty, 0.1);
    CHECK(vac.pass);
    CHECK(vac.vacuous);

    CHECK_THROWS_AS(spectral_gap_check(rep, 0.7), ConfigError);
}

TEST_CASE("projections: idempotence, transversality, eigenvector match") {
    const auto g = build_axisym_grid(14, 10);
    const Rapidity a = Rapidity::axial(0.15);
    const auto P = projection_for(a, g, ProjTarget::P);
    const auto Q = projection_for(a, g, ProjTarget::Q3);
    CHECK(P.eigenvalue == doctest::Approx(1.0));
    CHECK(Q.eigenvalue == doctest::Approx(0.0));

    Rng rng(31);
    for (int i = 0; i < 20; ++i) {
        const FieldState u = smooth_perturbation(g, rng.next_u64(), 8, 1.0);
        const FieldState pu = P.apply(u);
        CHECK(norm_H(P.apply(pu) - pu) < 1e-10);
        const FieldState qu = Q.apply(u);
        CHECK(norm_H(Q.apply(qu) - qu) < 1e-10);
    }
    // P q = 0 and Q p = 0
    const FieldState q_exact = eval_on_grid(eigenfunction_q(a, 3), g);
    const FieldState p_exact = eval_on_grid(eigenfunction_p(a), g);
    CHECK(norm_H(P.apply(q_exact)) / norm_H(q_exact) < 1e-8);
    CHECK(norm_H(Q.apply(p_exact)) / norm_H(p_exact) < 1e-8);
}

TEST_CASE("P at a = 0 projects constants onto span{(1,2)}") {
    const auto g = build_radial_grid(16);
    const auto P = projection_for(Rapidity{}, g, ProjTarget::P);
    FieldState c = FieldState::zero(g);
    c.u1.setConstant(0.7);
    c.u2.setConstant(-0.4);
    const FieldState pc = P.apply(c);
    // proportional to (1,2): u2 = 2 u1 pointwise
    CHECK((pc.u2 - 2.0 * pc.u1).cwiseAbs().maxCoeff() < 1e-9 * std::max(1.0, pc.u1.cwiseAbs().maxCoeff()));
}

TEST_CASE("Q3 requires the axisym sector") {
    CHECK_THROWS_AS(projection_for(Rapidity{}, build_radial_grid(16), ProjTarget::Q3),
                    SectorUnsupported);
}

TEST_CASE("contour projection agrees with the eigenvector projection") {
    const auto g = build_radial_grid(16);
    const auto P = projection_for(Rapidity{}, g, ProjTarget::P);
    const auto Pc = contour_projection(Rapidity{}, g, ContourCurve::gamma1, 24);
    Rng rng(33);
    for (int i = 0; i < 5; ++i) {
        const FieldState u = smooth_perturbation(g, rng.next_u64(), 8, 1.0);
        CHECK(norm_H(P.apply(u) - Pc.apply(u)) < 1e-6);
    }
}

TEST_CASE("gamma0 on the radial sector is the zero operator") {
    const auto g = build_radial_grid(16);
    const auto P0 = contour_projection(Rapidity{}, g, ContourCurve::gamma0, 24);
    Rng rng(34);
    for (int i = 0; i < 5; ++i) {
        const FieldState u = smooth_perturbation(g, rng.next_u64(), 8, 1.0);
        CHECK(norm_H(P0.apply(u)) < 1e-6);
    }
}

TEST_CASE("doubling the quadrature changes the contour projection below 1e-10") {
    const auto g = build_radial_grid(16);
    const auto Pa = contour_projection(Rapidity{}, g, ContourCurve::gamma1, 24);
    const auto Pb = contour_projection(Rapidity{}, g, ContourCurve::gamma1, 48);
    Rng rng(35);
    const FieldState u = smooth_perturbation(g, rng.next_u64(), 8, 1.0);
    CHECK(norm_H(Pa.apply(u) - Pb.apply(u)) < 1e-10);
}

TEST_CASE("compute_spectrum validates its grids") {
    const auto g = build_radial_grid(16);
    CHECK_THROWS_AS(compute_spectrum(Rapidity{}, g, g), BadResolution);
    CHECK_THROWS_AS(compute_spectrum(Rapidity{}, g, build_axisym_grid(20, 10)), GridMismatch);
}
