#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubicwave/geometry.hpp"
#include "cubicwave/io.hpp"
#include "cubicwave/perturbations.hpp"

using namespace cubicwave;

TEST_CASE("kelvin maps (-1,0) to (1,0)") {
    const auto q = kelvin({Frame::Hyperboloidal, -1.0, Vec3::Zero()});
    CHECK(q.frame == Frame::Cartesian);
    CHECK(q.c0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(q.c.norm() == doctest::Approx(0.0));
}

TEST_CASE("kelvin hand value (-2,e1)") {
    const auto q = kelvin({Frame::Hyperboloidal, -2.0, Vec3(1, 0, 0)});
    CHECK(q.c0 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(q.c[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    // interval identity
    const SpacetimePoint p{Frame::Hyperboloidal, -2.0, Vec3(1, 0, 0)};
    CHECK(interval(p) * interval(q) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kelvin_inv hand values and involution") {
    const auto h = kelvin_inv({Frame::Cartesian, 1.0, Vec3::Zero()});
    CHECK(h.c0 == doctest::Approx(-1.0));
    const auto h2 = kelvin_inv({Frame::Cartesian, 2.0, Vec3(1, 0, 0)});
    CHECK(h2.c0 == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
    CHECK(h2.c[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    const SpacetimePoint p{Frame::Cartesian, 2.0, Vec3(1, 0, 0)};
    const auto back = kelvin(kelvin_inv(p));
    CHECK(back.c0 == doctest::Approx(p.c0).epsilon(1e-12));
    CHECK((back.c - p.c).norm() < 1e-12);
}

TEST_CASE("null input raises DegenerateInterval") {
    CHECK_THROWS_AS(kelvin_inv({Frame::Cartesian, 1.0, Vec3(1, 0, 0)}), DegenerateInterval);
}

TEST_CASE("frame tags are checked at entry") {
    CHECK_THROWS_AS(kelvin({Frame::Cartesian, 1.0, Vec3::Zero()}), FrameMismatch);
    CHECK_THROWS_AS(to_similarity({Frame::Similarity, 0.0, Vec3::Zero()}), FrameMismatch);
}

TEST_CASE("similarity transform examples") {
    const auto s = to_similarity({Frame::Hyperboloidal, -1.0, Vec3::Zero()});
    CHECK(s.c0 == doctest::Approx(0.0));
    const double e = std::exp(1.0);
    const auto s2 = to_similarity({Frame::Hyperboloidal, -1.0 / e, Vec3(0.5 / e, 0, 0)});
    CHECK(s2.c0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s2.c[0] == doctest::Approx(0.5).epsilon(1e-14));
    const auto h = from_similarity({Frame::Similarity, std::log(2.0), Vec3::Zero()});
    CHECK(h.c0 == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK_THROWS_AS(from_similarity({Frame::Similarity, 0.0, Vec3(1, 0, 0)}), OutOfDomain);
    CHECK_THROWS_AS(to_similarity({Frame::Hyperboloidal, -2.0, Vec3::Zero()}), OutOfDomain);
}

TEST_CASE("single-axis boost formula and interval invariance") {
    const double s = 0.37;
    const auto b = lorentz_boost(Rapidity::axial(s), {Frame::Hyperboloidal, -2.0, Vec3::Zero()});
    CHECK(b.c0 == doctest::Approx(-2.0 * std::cosh(s)).epsilon(1e-14));
    CHECK(b.c[2] == doctest::Approx(-2.0 * std::sinh(s)).epsilon(1e-14));

    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        const SpacetimePoint p{Frame::Hyperboloidal, -1.0 - rng.uniform(),
                               0.3 * Vec3(rng.symmetric(), rng.symmetric(), rng.symmetric())};
        const Vec3 av(rng.symmetric(), rng.symmetric(), rng.symmetric());
        const Rapidity a(0.9 * av / std::max(1.0, av.norm()));
        const auto q = lorentz_boost(a, p);
        CHECK(interval(q) == doctest::Approx(interval(p)).epsilon(1e-12));
    }
}

TEST_CASE("rapidity construction rejects |a| beyond a_max") {
    CHECK_THROWS_AS(Rapidity(Vec3(2, 0, 0)), UnsupportedRapidity);
    CHECK_NOTHROW(Rapidity(Vec3(2, 0, 0), 3.0));
}

TEST_CASE("point JSON round trip") {
    const SpacetimePoint p{Frame::Similarity, 0.25, Vec3(0.1, -0.2, 0.3)};
    const auto q = io::point_from_json(io::point_to_json(p));
    CHECK(q.frame == p.frame);
    CHECK(q.c0 == p.c0);
    CHECK((q.c - p.c).norm() == 0.0);
}
