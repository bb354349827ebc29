#pragma once

#include <Eigen/Dense>

#include "cubicwave/errors.hpp"

namespace cubicwave {

using Vec3 = Eigen::Vector3d;

/// Cutoff below which the Minkowski interval counts as degenerate (null cone).
inline constexpr double kIntervalCutoff = 1e-14;

enum class Frame { Cartesian, Hyperboloidal, Similarity };

const char* frame_name(Frame f);
Frame frame_from_name(const std::string& name);

/// An event in one of the three frames. c0 is t, T or tau; c is x, X or xi.
struct SpacetimePoint {
    Frame frame = Frame::Cartesian;
    double c0 = 0.0;
    Vec3 c = Vec3::Zero();
};

/// Boost parameter a in R^3. Construction enforces |a| <= a_max.
class Rapidity {
  public:
    static constexpr double kDefaultMax = 1.0;

    Rapidity() : a_(Vec3::Zero()) {}
    explicit Rapidity(const Vec3& a, double a_max = kDefaultMax);
    /// Boost along the x^3 axis.
    static Rapidity axial(double a3, double a_max = kDefaultMax) {
        return Rapidity(Vec3(0, 0, a3), a_max);
    }

    const Vec3& vec() const { return a_; }
    double operator[](int j) const { return a_[j]; }
    double norm() const { return a_.norm(); }
    bool is_zero() const { return a_.isZero(0.0); }
    bool is_axial() const { return a_[0] == 0.0 && a_[1] == 0.0; }

  private:
    Vec3 a_;
};

/// kappa: (T,X) inside the past light cone -> (t,x) inside the future cone.
SpacetimePoint kelvin(const SpacetimePoint& p);

/// kappa^{-1}: (t,x) with t > |x| -> (T,X); same algebraic form as kappa.
SpacetimePoint kelvin_inv(const SpacetimePoint& p);

/// tau = -log(-T), xi = X/(-T); requires T in [-1,0), |X| < -T.
SpacetimePoint to_similarity(const SpacetimePoint& p);

/// T = -exp(-tau), X = exp(-tau) xi; requires tau >= 0, |xi| < 1.
SpacetimePoint from_similarity(const SpacetimePoint& p);

/// Composed boost Lambda(a) = Lambda^3 Lambda^2 Lambda^1 on hyperboloidal points.
SpacetimePoint lorentz_boost(const Rapidity& a, const SpacetimePoint& p);

/// Minkowski interval c0^2 - |c|^2 of a point's coordinates.
inline double interval(const SpacetimePoint& p) { return p.c0 * p.c0 - p.c.squaredNorm(); }

} // namespace cubicwave
