#include "cubicwave/verify.hpp"

#include <cmath>

#include "cubicwave/perturbations.hpp"

namespace cubicwave {

namespace {

// random point strictly inside the past light cone, T in (-1.5, -0.1)
SpacetimePoint random_cone_point(Rng& rng) {
    const double T = -0.1 - 1.4 * rng.uniform();
    const double rho = 0.95 * rng.uniform() * (-T);
    const double mu = 2.0 * rng.uniform() - 1.0;
    const double ph = 2.0 * std::numbers::pi * rng.uniform();
    const double s = std::sqrt(1.0 - mu * mu);
    return {Frame::Hyperboloidal, T, Vec3(rho * s * std::cos(ph), rho * s * std::sin(ph), rho * mu)};
}

// centered fourth-order second derivative in one slot of a callable
template <typename F>
double d2_fourth_order(F&& f, double h) {
    return (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h)) /
           (12.0 * h * h);
}

} // namespace

std::vector<CheckResult> run_verify_suites(std::uint64_t seed, int n_r, int n_z) {
    std::vector<CheckResult> out;
    auto add = [&out](const std::string& name, double measure, double tol) {
        out.push_back({name, measure < tol, measure, tol});
    };
    Rng rng(seed);

    // --- transforms ---
    {
        double worst_inv = 0, worst_rec = 0, worst_group = 0, worst_cone = 0;
        for (int i = 0; i < 10000; ++i) {
            const SpacetimePoint p = random_cone_point(rng);
            const SpacetimePoint q = kelvin(p);
            worst_rec = std::max(worst_rec, std::abs(interval(p) * interval(q) - 1.0));
            const SpacetimePoint back = kelvin_inv(q);
            worst_inv = std::max(worst_inv,
                                 std::abs(back.c0 - p.c0) + (back.c - p.c).norm());
        }
        for (int i = 0; i < 200; ++i) {
            const SpacetimePoint p = random_cone_point(rng);
            const double a = rng.symmetric(), b = rng.symmetric();
            const auto one = lorentz_boost(Rapidity::axial(b, 10.0),
                                           lorentz_boost(Rapidity::axial(a, 10.0), p));
            const auto two = lorentz_boost(Rapidity::axial(a + b, 10.0), p);
            worst_group = std::max(worst_group,
                                   std::abs(one.c0 - two.c0) + (one.c - two.c).norm());
            const Vec3 dir(rng.symmetric(), rng.symmetric(), rng.symmetric());
            const Rapidity rnd(0.99 * dir / std::max(1.0, dir.norm()), 1.0);
            const auto im = lorentz_boost(rnd, p);
            if (!(im.c0 < 0.0 && im.c.norm() < -im.c0)) worst_cone = 1.0;
        }
        add("kelvin involution (1e4 points)", worst_inv, 1e-12);
        add("interval reciprocity", worst_rec, 1e-12);
        add("boost group law on one axis", worst_group, 1e-12);
        add("boost preserves the light cone", worst_cone, 0.5);
        const SpacetimePoint p0 = random_cone_point(rng);
        const auto id = lorentz_boost(Rapidity{}, p0);
        add("Lambda(0) = identity", std::abs(id.c0 - p0.c0) + (id.c - p0.c).norm(), 1e-15);
        double worst_sim = 0;
        for (int i = 0; i < 1000; ++i) {
            SpacetimePoint p = random_cone_point(rng);
            p.c0 = -0.999 * rng.uniform() - 1e-3; // T in [-1, 0)
            p.c *= 0.9 * (-p.c0) / std::max(p.c.norm(), 1e-300);
            const auto back = from_similarity(to_similarity(p));
            worst_sim = std::max(worst_sim, std::abs(back.c0 - p.c0) + (back.c - p.c).norm());
        }
        add("similarity round trip", worst_sim, 1e-12);
    }

    // --- family identities ---
    {
        double worst_mink = 0, worst_boost = 0, worst_vu = 0;
        for (int i = 0; i < 500; ++i) {
            const Vec3 av(rng.symmetric(), rng.symmetric(), rng.symmetric());
            const Rapidity a(0.9 * av / std::max(1.0, av.norm()), 1.0);
            worst_mink = std::max(worst_mink, std::abs(coeffs_A(a).minkowski() - 1.0));
            const SpacetimePoint p = random_cone_point(rng);
            const auto bp = lorentz_boost(a, p);
            worst_boost = std::max(worst_boost,
                                   std::abs(u_a(a, p.c0, p.c) - u_a(Rapidity{}, bp.c0, bp.c)));
            const SpacetimePoint c = kelvin(p);
            worst_vu =
                std::max(worst_vu, std::abs(v_a(a, c.c0, c.c) -
                                            u_a(a, p.c0, p.c) / interval(c)));
        }
        add("Minkowski identity A0^2 - |A|^2 = 1", worst_mink, 1e-12);
        add("u_a = u_0 o Lambda(a)", worst_boost, 1e-10);
        add("v_a = (t^2-|x|^2)^{-1} u_a o kappa^{-1}", worst_vu, 1e-10);

        // exact solution: box v + v^3 = 0 with fourth-order stencils at h = 1e-3
        double worst_pde = 0;
        const double h = 1e-3;
        for (int i = 0; i < 40; ++i) {
            const Vec3 av(rng.symmetric(), rng.symmetric(), rng.symmetric());
            const Rapidity a(0.5 * av / std::max(1.0, av.norm()), 1.0);
            const double t = 1.0 + rng.uniform();
            Vec3 x(rng.symmetric(), rng.symmetric(), rng.symmetric());
            x *= 0.3 * t / std::max(1.0, x.norm());
            const double dtt =
                d2_fourth_order([&](double e) { return v_a(a, t + e, x); }, h);
            double lap = 0;
            for (int j = 0; j < 3; ++j)
                lap += d2_fourth_order(
                    [&](double e) {
                        Vec3 y = x;
                        y[j] += e;
                        return v_a(a, t, y);
                    },
                    h);
            const double v = v_a(a, t, x);
            worst_pde = std::max(worst_pde, std::abs(-dtt + lap + v * v * v));
        }
        add("box v_a + v_a^3 = 0 (FD stencils)", worst_pde, 1e-6);

        // nabla_n defining relation via finite differences in T
        double worst_nab = 0;
        for (int i = 0; i < 40; ++i) {
            const Rapidity a = Rapidity::axial(0.4 * rng.symmetric(), 1.0);
            const double T = -0.3 - 0.5 * rng.uniform();
            Vec3 X(rng.symmetric(), rng.symmetric(), rng.symmetric());
            X *= 0.5 * (-T) / std::max(1.0, X.norm());
            auto uofT = [&](double e) {
                const SpacetimePoint cart =
                    kelvin({Frame::Hyperboloidal, T + e, X});
                return v_a(a, cart.c0, cart.c) / interval({Frame::Hyperboloidal, T + e, X});
            };
            const double dT = (uofT(1e-5) - uofT(-1e-5)) / 2e-5;
            const SpacetimePoint cart = kelvin({Frame::Hyperboloidal, T, X});
            const double lhs = nabla_n(a, cart.c0, cart.c) / interval({Frame::Hyperboloidal, T, X});
            worst_nab = std::max(worst_nab, std::abs(lhs - dT));
        }
        add("nabla_n defining relation (FD in T)", worst_nab, 1e-6);
    }

    // --- operator identities on a small grid ---
    {
        const GridPtr gr = build_radial_grid(n_r);
        const GridPtr ga = build_axisym_grid(n_r, n_z);
        double worst_static = 0;
        for (const double a3 : {0.0, 0.1, 0.3}) {
            const Rapidity a = Rapidity::axial(a3, 1.0);
            const FieldState psi = eval_on_grid(psi_pair_a(a), ga);
            worst_static = std::max(worst_static, norm_H(apply_L_free(psi) + apply_N(psi)));
        }
        add("static residual L Psi_a + N(Psi_a) (axisym)", worst_static, 1e-7);

        const FieldState s = smooth_perturbation(ga, rng.next_u64(), 10, 1.0);
        const FieldState t = smooth_perturbation(ga, rng.next_u64(), 10, 1.0);
        const Rapidity a02 = Rapidity::axial(0.2, 1.0);
        const OperatorMatrix op = assemble_matrix(a02, ga, OperatorKind::Linearized);
        const FieldState viaM = op.apply(s);
        const FieldState direct = apply_L_free(s) + apply_L_prime(a02, s);
        add("matrix / matrix-free agreement", norm_H(viaM - direct), 1e-10);

        const FieldState lin =
            apply_L_free(2.0 * s + 3.0 * t) -
            (2.0 * apply_L_free(s) + 3.0 * apply_L_free(t));
        add("linearity of L", norm_H(lin), 1e-10);

        FieldState small = s;
        small *= 1e-3;
        const FieldState three =
            apply_N(eval_on_grid(psi_pair_a(a02), ga) + small) -
            apply_N(eval_on_grid(psi_pair_a(a02), ga)) - apply_L_prime(a02, small);
        add("N_a three-term identity", norm_H(three - apply_N_a(a02, small)), 1e-12);

        const FieldState p = eval_on_grid(eigenfunction_p(a02), ga);
        add("M p_a = p_a", norm_H(op.apply(p) - p) / norm_H(p), 1e-6);
        const FieldState q = eval_on_grid(eigenfunction_q(a02, 3), ga);
        add("M q_{a,3} = 0", norm_H(op.apply(q)) / norm_H(q), 1e-6);
        (void)gr;
    }
    return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

} // namespace cubicwave
