#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "cubicwave/diagnostics.hpp"
#include "cubicwave/perturbations.hpp"

using namespace cubicwave;
using std::numbers::pi;

TEST_CASE("fit_decay on clean and noisy synthetic data") {
    std::vector<double> ts, vs;
    for (int i = 0; i <= 60; ++i) {
        ts.push_back(0.1 * i);
        vs.push_back(std::exp(-0.05 * i));
    }
    auto f = fit_decay(ts, vs, 0.0, 6.0);
    CHECK(f.rate == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));

    std::fill(vs.begin(), vs.end(), 2.7);
    f = fit_decay(ts, vs, 0.0, 6.0);
    CHECK(std::abs(f.rate) < 1e-10);

    Rng rng(61);
    for (size_t i = 0; i < vs.size(); ++i)
        vs[i] = std::exp(-0.45 * ts[i]) * (1.0 + 0.01 * rng.symmetric());
    f = fit_decay(ts, vs, 0.0, 6.0);
    CHECK(f.rate == doctest::Approx(0.45).epsilon(0.025));

    vs[3] = -1.0;
    CHECK_THROWS_AS(fit_decay(ts, vs, 0.0, 6.0), NonPositiveValues);
}

TEST_CASE("family Sigma_T norms match the closed forms") {
    const auto g = build_radial_grid(24);
    for (const double T : {-1.0, -0.5, -0.125}) {
        const auto n = sigma_T_norms_family(Rapidity{}, g, T);
        const double vol = 4.0 * pi / 3.0 * std::pow(-T, 3);
        CHECK(n.l2 == doctest::Approx(std::sqrt(2.0 * vol / (T * T))).epsilon(1e-10));
        CHECK(n.h1dot == doctest::Approx(0.0));
        CHECK(n.h1 == doctest::Approx(std::sqrt(2.0 * vol) / (T * T)).epsilon(1e-10));
        CHECK(n.nabla_n_l2 ==
              doctest::Approx(std::sqrt(2.0 * vol / std::pow(T, 4))).epsilon(1e-10));
    }
}

TEST_CASE("family norms agree between the similarity and Cartesian routes") {
    const auto g = build_axisym_grid(20, 16);
    for (const double a3 : {0.0, 0.2}) {
        for (const double T : {-1.0, -0.3}) {
            const auto ns = sigma_T_norms_family(Rapidity::axial(a3), g, T);
            const auto nc = sigma_T_norms_family_cartesian(Rapidity::axial(a3), T, 80);
            CHECK(ns.l2 == doctest::Approx(nc.l2).epsilon(1e-6));
            CHECK(ns.h1 == doctest::Approx(nc.h1).epsilon(1e-6));
            CHECK(ns.nabla_n_l2 == doctest::Approx(nc.nabla_n_l2).epsilon(1e-6));
            if (a3 > 0.0) CHECK(ns.h1dot == doctest::Approx(nc.h1dot).epsilon(1e-6));
        }
    }
}

TEST_CASE("family H1 + nabla_n norm scales like |T|^{-1/2}") {
    const auto g = build_radial_grid(24);
    std::vector<double> Ts, vals;
    for (double T = -1.0; T >= -1.0 && T < -1.0 / 64.0 + 1e-12; ) {
        const auto n = sigma_T_norms_family(Rapidity{}, g, T);
        Ts.push_back(-T);
        vals.push_back(n.h1 + n.nabla_n_l2);
        T *= 0.5;
        if (-T < 1.0 / 64.0) break;
    }
    const auto f = fit_decay_power(Ts, vals, 0.0, 2.0);
    CHECK(-f.rate == doctest::Approx(-0.5).epsilon(0.02)); // values ~ |T|^{-1/2}
}

TEST_CASE("strichartz closed form of the selfsimilar solution") {
    for (const double delta : {0.25, 0.5}) {
        const double closed = std::pow(4.0 * std::log(2.0) * std::pow(1.0 - delta, 3) / 3.0, 0.25);
        CHECK(strichartz_family(Rapidity{}, 3.7, delta, 4.0) ==
              doctest::Approx(closed).epsilon(1e-8));
        CHECK(strichartz_family(Rapidity{}, 12.0, delta, 4.0) ==
              doctest::Approx(closed).epsilon(1e-8)); // t-independent
    }
    CHECK_THROWS_AS(strichartz_family(Rapidity{}, 2.0, 0.5, 2.5), UnsupportedExponent);
    CHECK_THROWS_AS(strichartz_family(Rapidity{}, 2.0, 1.5, 4.0), OutOfDomain);
}

TEST_CASE("trace strichartz of the static run reproduces the product-region value") {
    const auto g = build_radial_grid(16);
    EvolveConfig cfg;
    cfg.tau_max = 6.0;
    cfg.dtau = 2e-3;
    cfg.store_stride = 50;
    cfg.series_stride = 50;
    cfg.detectors = false;
    const auto tr = evolve(eval_on_grid(psi_pair_a(Rapidity{}), g), cfg);
    const double delta = 0.5;
    // psi = sqrt2: S-integral log(8/3), spatial (4/3)(1-delta)^3
    const double expect =
        std::pow(4.0 / 3.0 * std::pow(1.0 - delta, 3) * std::log(8.0 / 3.0), 0.25);
    for (const double t : {4.0, 8.0, 16.0}) {
        CHECK(strichartz_trace(tr, t, delta, 4.0) == doctest::Approx(expect).epsilon(1e-7));
    }
    // perturbation route: subtracting the family leaves numerical zero
    CHECK(strichartz_trace(tr, 4.0, delta, 4.0, &cfg.base_a) < 1e-9);
}

TEST_CASE("sigma_T_norms of a trace vanish on the family and need stored states") {
    const auto g = build_radial_grid(16);
    EvolveConfig cfg;
    cfg.tau_max = 2.0;
    cfg.dtau = 1e-3;
    cfg.store_stride = 100;
    cfg.series_stride = 100;
    const auto tr = evolve(eval_on_grid(psi_pair_a(Rapidity{}), g), cfg);
    const auto n = sigma_T_norms(tr, -std::exp(-1.0));
    CHECK(n.h1 < 1e-8);
    CHECK(n.nabla_n_l2 < 1e-8);
    CHECK_THROWS_AS(sigma_T_norms(tr, -0.01), NoStoredState); // tau = 4.6 beyond range
    CHECK_THROWS_AS(sigma_T_norms(tr, 0.5), OutOfDomain);
}
