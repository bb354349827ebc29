#include "cubicwave/geometry.hpp"

#include <cmath>

namespace cubicwave {

const char* frame_name(Frame f) {
    switch (f) {
        case Frame::Cartesian: return "cartesian";
        case Frame::Hyperboloidal: return "hyperboloidal";
        case Frame::Similarity: return "similarity";
    }
    return "?";
}

Frame frame_from_name(const std::string& name) {
    if (name == "cartesian") return Frame::Cartesian;
    if (name == "hyperboloidal") return Frame::Hyperboloidal;
    if (name == "similarity") return Frame::Similarity;
    throw ConfigError("unknown frame '" + name + "'");
}

Rapidity::Rapidity(const Vec3& a, double a_max) : a_(a) {
    if (!(a.norm() <= a_max * (1.0 + 1e-12)))
        throw UnsupportedRapidity("|a| = " + std::to_string(a.norm()) +
                                  " exceeds a_max = " + std::to_string(a_max));
}

namespace {

void expect_frame(const SpacetimePoint& p, Frame f, const char* op) {
    if (p.frame != f)
        throw FrameMismatch(std::string(op) + " expects a " + frame_name(f) + " point, got " +
                            frame_name(p.frame));
}

// Shared core of kappa and kappa^{-1}: (c0, c) -> (-c0, c) / (c0^2 - |c|^2).
SpacetimePoint invert(const SpacetimePoint& p, Frame out) {
    const double q = interval(p);
    if (std::abs(q) < kIntervalCutoff)
        throw DegenerateInterval("point on the null cone, interval = " + std::to_string(q));
    if (q < 0.0)
        throw OutOfDomain("point outside the light cone, interval = " + std::to_string(q));
    return {out, -p.c0 / q, p.c / q};
}

} // namespace

SpacetimePoint kelvin(const SpacetimePoint& p) {
    expect_frame(p, Frame::Hyperboloidal, "kelvin");
    if (p.c0 >= 0.0) throw OutOfDomain("kelvin expects T < 0");
    return invert(p, Frame::Cartesian);
}

SpacetimePoint kelvin_inv(const SpacetimePoint& p) {
    expect_frame(p, Frame::Cartesian, "kelvin_inv");
    if (p.c0 <= 0.0) throw OutOfDomain("kelvin_inv expects t > 0");
    return invert(p, Frame::Hyperboloidal);
}

SpacetimePoint to_similarity(const SpacetimePoint& p) {
    expect_frame(p, Frame::Hyperboloidal, "to_similarity");
    const double T = p.c0;
    if (T >= 0.0 || T < -1.0) throw OutOfDomain("to_similarity expects T in [-1, 0)");
    if (p.c.norm() >= -T) throw OutOfDomain("to_similarity expects |X| < -T");
    return {Frame::Similarity, -std::log(-T), p.c / (-T)};
}

SpacetimePoint from_similarity(const SpacetimePoint& p) {
    expect_frame(p, Frame::Similarity, "from_similarity");
    if (p.c0 < 0.0) throw OutOfDomain("from_similarity expects tau >= 0");
    if (p.c.norm() >= 1.0) throw OutOfDomain("from_similarity expects |xi| < 1");
    const double mT = std::exp(-p.c0); // -T
    return {Frame::Hyperboloidal, -mT, mT * p.c};
}

SpacetimePoint lorentz_boost(const Rapidity& a, const SpacetimePoint& p) {
    expect_frame(p, Frame::Hyperboloidal, "lorentz_boost");
    double T = p.c0;
    Vec3 X = p.c;
    for (int j = 0; j < 3; ++j) { // Lambda(a) = Lambda^3 Lambda^2 Lambda^1
        const double ch = std::cosh(a[j]), sh = std::sinh(a[j]);
        const double Tn = T * ch + X[j] * sh;
        X[j] = T * sh + X[j] * ch;
        T = Tn;
    }
    return {Frame::Hyperboloidal, T, X};
}

} // namespace cubicwave
