#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubicwave/diagnostics.hpp"
#include "cubicwave/perturbations.hpp"

using namespace cubicwave;

TEST_CASE("rhs_full vanishes on the static family and at zero") {
    const auto g = build_axisym_grid(14, 10);
    for (const double a3 : {0.0, 0.25}) {
        const FieldState psi = eval_on_grid(psi_pair_a(Rapidity::axial(a3)), g);
        CHECK(norm_H(rhs_full(psi)) < 1e-8);
    }
    CHECK(norm_H(rhs_full(FieldState::zero(g))) == 0.0);
}

TEST_CASE("rhs_full linearizes to L_a near the family") {
    const auto g = build_radial_grid(16);
    const FieldState psi = eval_on_grid(psi_pair_a(Rapidity{}), g);
    const FieldState p = eval_on_grid(eigenfunction_p(Rapidity{}), g);
    const double h = 1e-4;
    const FieldState r = rhs_full(psi + h * p);
    // L_0 p = p, so rhs = h p + O(h^2)
    CHECK(norm_H(r - h * p) < 20.0 * h * h * norm_H(p));
}

TEST_CASE("step_rk4 fixes static data and has fourth order") {
    const auto g = build_radial_grid(16);
    const FieldState psi = eval_on_grid(psi_pair_a(Rapidity{}), g);
    CHECK(norm_H(step_rk4(psi, 1e-3) - psi) < 1e-10);

    // one-step error against a tiny-step reference shrinks 16x per halving
    Rng rng(41);
    const FieldState s0 = psi + smooth_perturbation(g, rng.next_u64(), 6, 0.05);
    auto substep = [&](double H, int k) {
        FieldState s = s0;
        for (int i = 0; i < k; ++i) s = step_rk4(s, H / k);
        return s;
    };
    const double H = 0.01; // inside the asymptotic regime of the local error
    const FieldState ref = substep(H, 64);
    const double e1 = norm_H(substep(H, 1) - ref);
    const double e2 = norm_H(substep(H, 2) - ref);
    CHECK(e1 / e2 > 12.0);
    CHECK(e1 / e2 < 24.0);
}

TEST_CASE("one linear step multiplies the unstable mode by e^{dtau}") {
    const auto g = build_radial_grid(16);
    const FieldState p = eval_on_grid(eigenfunction_p(Rapidity{}), g);
    const auto tr = evolve_linear(p, Rapidity{}, 0.5, 1e-3, LinearKind::Linearized, 100);
    for (size_t i = 0; i < tr.times.size(); ++i)
        CHECK(tr.h_norms[i] ==
              doctest::Approx(tr.h_norms[0] * std::exp(tr.times[i])).epsilon(1e-6));
}

TEST_CASE("evolve keeps the static family and flags the two exits") {
    const auto g = build_radial_grid(16);
    const FieldState psi = eval_on_grid(psi_pair_a(Rapidity{}), g);
    const FieldState p = eval_on_grid(eigenfunction_p(Rapidity{}), g);

    EvolveConfig cfg;
    cfg.tau_max = 5.0;
    cfg.dtau = 1e-3;
    cfg.series_stride = 50;
    const auto still = evolve(psi, cfg);
    CHECK(still.outcome == Outcome::Ran);
    for (const double h : still.h_norms) CHECK(h < 1e-8);

    cfg.tau_max = 12.0;
    const auto up = evolve(psi + 0.3 * p, cfg);
    CHECK(up.outcome == Outcome::BlowupDetected);
    const auto down = evolve(psi - 0.3 * p, cfg);
    CHECK(down.outcome == Outcome::DispersionDetected);
}

TEST_CASE("static family preserved over tau = 5 for a in {0, 0.2 e3}") {
    EvolveConfig cfg;
    cfg.tau_max = 5.0;
    cfg.dtau = 1e-3;
    cfg.series_stride = 100;
    {
        const auto g = build_radial_grid(16);
        const auto tr = evolve(eval_on_grid(psi_pair_a(Rapidity{}), g), cfg);
        CHECK(*std::max_element(tr.h_norms.begin(), tr.h_norms.end()) < 1e-7);
    }
    {
        const auto g = build_axisym_grid(12, 10);
        cfg.base_a = Rapidity::axial(0.2);
        const auto tr = evolve(eval_on_grid(psi_pair_a(cfg.base_a), g), cfg);
        CHECK(*std::max_element(tr.h_norms.begin(), tr.h_norms.end()) < 1e-7);
    }
}

TEST_CASE("linear rates: unstable 1.0, neutral 0.0, stable >= 0.40, free contraction") {
    const auto g = build_radial_grid(20);
    const Rapidity a0{};

    const FieldState p = eval_on_grid(eigenfunction_p(a0), g);
    const auto trp = evolve_linear(p, a0, 4.0, 1e-3, LinearKind::Linearized, 20);
    const auto fp = fit_decay(trp.times, trp.h_norms, 0.0, 4.0);
    CHECK(-fp.rate == doctest::Approx(1.0).epsilon(0.02));

    const auto ga = build_axisym_grid(12, 10);
    const Rapidity a2 = Rapidity::axial(0.2);
    const FieldState q = eval_on_grid(eigenfunction_q(a2, 3), ga);
    const auto trq = evolve_linear(q, a2, 4.0, 1e-3, LinearKind::Linearized, 20);
    const auto fq = fit_decay(trq.times, trq.h_norms, 0.0, 4.0);
    CHECK(std::abs(fq.rate) < 0.02);

    // stable-subspace decay
    const auto P = projection_for(a0, g, ProjTarget::P);
    Rng rng(47);
    for (int i = 0; i < 3; ++i) {
        const FieldState u = P.remove(smooth_perturbation(g, rng.next_u64(), 10, 1.0));
        const auto tr = evolve_linear(u, a0, 8.0, 1e-3, LinearKind::Linearized, 20);
        const auto f = fit_decay(tr.times, tr.h_norms, 2.0, 8.0);
        CHECK(f.rate >= 0.40);
    }

    // free semigroup contraction on random smooth states
    for (int i = 0; i < 10; ++i) {
        const FieldState u = smooth_perturbation(g, rng.next_u64(), 10, 1.0);
        const auto tr = evolve_linear(u, a0, 6.0, 1e-3, LinearKind::Free, 20);
        for (size_t k = 0; k < tr.times.size(); ++k)
            CHECK(tr.h_norms[k] <= 1.05 * std::exp(-tr.times[k] / 2.0) * tr.h_norms[0]);
    }
}

TEST_CASE("halving dtau changes the final norm below 1e-6") {
    const auto g = build_radial_grid(16);
    Rng rng(49);
    const FieldState psi = eval_on_grid(psi_pair_a(Rapidity{}), g);
    const FieldState init = psi + smooth_perturbation(g, rng.next_u64(), 8, 0.01);
    EvolveConfig cfg;
    cfg.tau_max = 3.0;
    cfg.dtau = 1e-3;
    cfg.series_stride = 1000;
    const auto t1 = evolve(init, cfg);
    cfg.dtau = 5e-4;
    const auto t2 = evolve(init, cfg);
    CHECK(std::abs(t1.h_norms.back() - t2.h_norms.back()) < 1e-6);
}

TEST_CASE("track_modulation recovers family members") {
    const auto g = build_axisym_grid(14, 10);
    const FieldState psi2 = eval_on_grid(psi_pair_a(Rapidity::axial(0.2)), g);
    CHECK(track_modulation(psi2, 0.1).vec()[2] == doctest::Approx(0.2).epsilon(1e-8));
    const FieldState psi0 = eval_on_grid(psi_pair_a(Rapidity{}), g);
    CHECK(std::abs(track_modulation(psi0, 0.05).vec()[2]) < 1e-8);

    // small even perturbation shifts the fit at second order
    Rng rng(51);
    FieldState pert = smooth_perturbation(g, rng.next_u64(), 6, 1.0);
    const double eps = 1e-3;
    const FieldState psi1 = eval_on_grid(psi_pair_a(Rapidity::axial(0.1)), g);
    const double fit1 = track_modulation(psi1 + eps * pert, 0.1).vec()[2];
    const double fit2 = track_modulation(psi1 + (2.0 * eps) * pert, 0.1).vec()[2];
    // linear part dominates but stays O(eps); the fit moves smoothly
    CHECK(std::abs(fit1 - 0.1) < 0.05);
    CHECK(std::abs(fit2 - 0.1) < 0.1);
    CHECK(track_modulation(psi1, 0.1).vec()[2] == doctest::Approx(0.1).epsilon(1e-10));
}

TEST_CASE("modulation_rhs vanishes on the family") {
    const auto g = build_axisym_grid(12, 10);
    const Rapidity a = Rapidity::axial(0.1);
    const auto Q = projection_for(a, g, ProjTarget::Q3);
    const FieldState psi = eval_on_grid(psi_pair_a(a), g);
    const Vec3 rhs = modulation_rhs(psi, a, Q);
    CHECK(std::abs(rhs[2]) < 1e-10);
    CHECK(rhs[0] == 0.0);
    CHECK(rhs[1] == 0.0);
}

TEST_CASE("tracking gauge agrees with modulation_rhs along a run") {
    const auto g = build_axisym_grid(12, 10);
    const Rapidity base = Rapidity::axial(0.1);
    const auto Q = projection_for(base, g, ProjTarget::Q3);
    const auto P = projection_for(base, g, ProjTarget::P);
    Rng rng(53);
    FieldState v = smooth_perturbation(g, rng.next_u64(), 8, 5e-3);
    v = P.remove(Q.remove(v));

    EvolveConfig cfg;
    cfg.tau_max = 4.0;
    cfg.dtau = 1e-3;
    cfg.series_stride = 20;
    cfg.store_stride = 20;
    cfg.track_modulation = true;
    cfg.base_a = base;
    cfg.detectors = false;
    const auto tr = evolve(eval_on_grid(psi_pair_a(base), g) + v, cfg, &Q);

    // finite-difference da/dtau vs the modulation integrand, after transients
    int checked = 0;
    for (size_t i = 2; i + 2 < tr.times.size(); ++i) {
        if (tr.times[i] < 1.0) continue;
        const double dadt = (tr.mod_a[i + 1] - tr.mod_a[i - 1]) /
                            (tr.times[i + 1] - tr.times[i - 1]);
        const FieldState* s = tr.state_near(tr.times[i]);
        if (!s) continue;
        const double rhs = modulation_rhs(*s, Rapidity::axial(tr.mod_a[i], 10.0), Q)[2];
        if (std::abs(rhs) < 1e-12) continue;
        CHECK(dadt / rhs == doctest::Approx(1.0).epsilon(0.1));
        ++checked;
    }
    CHECK(checked > 10);
}
