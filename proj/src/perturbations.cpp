#include "cubicwave/perturbations.hpp"

#include <cmath>

namespace cubicwave {

std::uint64_t Rng::next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

namespace {

// T_{2k}(r) evaluated at the radial nodes, constant in mu
VectorXd even_cheb_mode(const Grid& g, int k) {
    VectorXd v(g.nodes());
    for (int i = 0; i < g.nodes(); ++i)
        v[i] = std::cos(2.0 * k * std::acos(std::clamp(g.R[i], -1.0, 1.0)));
    return v;
}

} // namespace

VectorXd chebyshev_bump(const Grid& g, Rng& rng, int modes, double decay) {
    VectorXd u = VectorXd::Zero(g.nodes());
    for (int k = 0; k < modes; ++k)
        u += rng.symmetric() * std::pow(decay, -k) * even_cheb_mode(g, k);
    return u;
}

FieldState smooth_perturbation(const GridPtr& g, std::uint64_t seed, int modes,
                               double amplitude, double decay) {
    Rng rng(seed);
    FieldState s{g, chebyshev_bump(*g, rng, modes, decay), chebyshev_bump(*g, rng, modes, decay)};
    const double n = norm_H(s);
    if (n > 0.0) s *= amplitude / n;
    return s;
}

FieldState tail_perturbation(const GridPtr& g, double alpha, double amplitude) {
    if (!(alpha > 0.5)) throw OutOfDomain("tail profile needs alpha > 1/2 for H^1 data");
    FieldState s = FieldState::zero(g);
    s.u1 = (1.0 - g->R.array().square()).pow(alpha);
    const double n = norm_H(s);
    if (n > 0.0) s *= amplitude / n;
    return s;
}

FieldState rough_perturbation(const GridPtr& g, std::uint64_t seed, double amplitude,
                              int modes) {
    Rng rng(seed);
    FieldState s = FieldState::zero(g);
    for (int k = 0; k < modes; ++k)
        s.u1 += rng.symmetric() / std::pow(k + 1.0, 2) * even_cheb_mode(*g, k);
    for (int k = 0; k < modes; ++k)
        s.u2 += rng.symmetric() / (k + 1.0) * even_cheb_mode(*g, k);
    const double n = norm_H(s);
    if (n > 0.0) s *= amplitude / n;
    return s;
}

} // namespace cubicwave
