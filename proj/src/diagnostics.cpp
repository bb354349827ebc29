#include "cubicwave/diagnostics.hpp"

#include <cmath>

namespace cubicwave {

namespace {

// L^2(B) norms of the components of a grid pair and of grad u1
struct BallNorms {
    double u1, grad_u1, u2;
};

BallNorms ball_norms(const FieldState& s) {
    const Grid& g = *s.grid;
    double gsq = g.w_vol.dot(g.dr(s.u1).cwiseAbs2());
    if (g.sector == SectorKind::Axisym) {
        const VectorXd w_ang =
            (g.w_vol.array() * (1.0 - g.MU.array().square()) / g.R.array().square()).matrix();
        gsq += w_ang.dot(g.dmu(s.u1).cwiseAbs2());
    }
    return {std::sqrt(g.w_vol.dot(s.u1.cwiseAbs2())), std::sqrt(gsq),
            std::sqrt(g.w_vol.dot(s.u2.cwiseAbs2()))};
}

SigmaTNorms norms_from_ball(const BallNorms& b, double T) {
    const double aT = std::abs(T);
    SigmaTNorms n;
    n.l2 = std::sqrt(aT) * b.u1;
    n.h1dot = b.grad_u1 / std::sqrt(aT);
    n.h1 = std::sqrt(b.grad_u1 * b.grad_u1 + b.u1 * b.u1) / std::sqrt(aT);
    n.nabla_n_l2 = b.u2 / std::sqrt(aT);
    return n;
}

void check_T(double T) {
    if (!(T >= -1.0 && T < 0.0)) throw OutOfDomain("Sigma_T norms need T in [-1, 0)");
}

// interpolate a stored first component at radius rho along the mu_k column,
// using the even joint-parity extension onto the full Chebyshev grid
class RadialInterp {
  public:
    explicit RadialInterp(const Grid& g) : g_(g) {
        const int N = 2 * g.n_r - 1;
        const auto cheb = collocation::chebyshev(N);
        full_r_ = cheb.x;
        bary_ = collocation::barycentric_weights(full_r_);
        col_.resize(N + 1);
    }

    double eval(const VectorXd& u1, int k, double rho) {
        const int nr = g_.n_r, nz = g_.n_z;
        const int N = 2 * nr - 1;
        for (int j = 0; j < nr; ++j) col_[j] = u1[j * nz + k];
        for (int j = nr; j <= N; ++j) col_[j] = u1[(N - j) * nz + (nz - 1 - k)];
        return collocation::barycentric_eval(full_r_, bary_, col_, rho);
    }

  private:
    const Grid& g_;
    VectorXd full_r_, bary_, col_;
};

void check_p(double p) {
    if (!(p > 8.0 / 3.0 && p <= 6.0))
        throw UnsupportedExponent("strichartz exponent p must lie in (8/3, 6]");
}

} // namespace

SigmaTNorms sigma_T_norms(const EvolutionTrace& tr, double T) {
    check_T(T);
    const double tau = -std::log(-T);
    double stored_tau = 0.0;
    const FieldState* s = tr.state_near(tau, &stored_tau);
    if (!s) throw NoStoredState("no stored state near tau = " + std::to_string(tau));
    FieldState phi = *s;
    if (tr.ref_family) {
        const Rapidity a = Rapidity::axial(tr.mod_a_at(stored_tau), 10.0);
        phi -= eval_on_grid(psi_pair_a(a), s->grid);
    }
    return norms_from_ball(ball_norms(phi), T);
}

SigmaTNorms sigma_T_norms_family(const Rapidity& a, const GridPtr& g, double T) {
    check_T(T);
    check_sector_supports(*g, a, "sigma_T_norms_family");
    return norms_from_ball(ball_norms(eval_on_grid(psi_pair_a(a), g)), T);
}

SigmaTNorms sigma_T_norms_family_cartesian(const Rapidity& a, double T, int n_quad) {
    check_T(T);
    const auto A = coeffs_A(a);
    const auto rule = collocation::gauss_legendre(n_quad);
    const double aT = std::abs(T);
    double l2 = 0, h1dot = 0, nab = 0;
    // u_a(T,X) = sqrt2 / (A0 |T| - A.X); axial A => depends on |X| and X^3
    for (int i = 0; i < n_quad; ++i) {
        const double rho = 0.5 * aT * (rule.x[i] + 1.0);
        const double wr = 0.5 * aT * rule.w[i];
        for (int k = 0; k < n_quad; ++k) {
            const double m = rule.x[k];
            const double wm = rule.w[k];
            const double w = 2.0 * std::numbers::pi * wr * wm * rho * rho;
            const double den = A.A0 * aT - (A.A1 * rho * std::sqrt(1 - m * m) + A.A3 * rho * m);
            const double u = kSqrt2 / den;
            const double gradsq =
                2.0 * (A.A1 * A.A1 + A.A2 * A.A2 + A.A3 * A.A3) / std::pow(den, 4);
            const double dTu = kSqrt2 * A.A0 / (den * den);
            l2 += w * u * u;
            h1dot += w * gradsq;
            nab += w * dTu * dTu;
        }
    }
    SigmaTNorms n;
    n.l2 = std::sqrt(l2);
    n.h1dot = std::sqrt(h1dot);
    n.h1 = std::sqrt(h1dot + l2 / (T * T));
    n.nabla_n_l2 = std::sqrt(nab);
    return n;
}

double strichartz_family(const Rapidity& a, double t, double delta, double p, int n_quad) {
    check_p(p);
    if (!(delta > 0.0 && delta < 1.0)) throw OutOfDomain("delta must lie in (0,1)");
    const auto rule = collocation::gauss_legendre(n_quad);
    double acc = 0.0;
    for (int i = 0; i < n_quad; ++i) {
        const double s = t + 0.5 * t * (rule.x[i] + 1.0); // s in (t, 2t)
        const double ws = 0.5 * t * rule.w[i];
        const double rmax = (1.0 - delta) * s;
        for (int j = 0; j < n_quad; ++j) {
            const double r = 0.5 * rmax * (rule.x[j] + 1.0);
            const double wr = 0.5 * rmax * rule.w[j];
            for (int k = 0; k < n_quad; ++k) {
                const double m = rule.x[k];
                const double wm = 0.5 * rule.w[k]; // solid-angle average
                const Vec3 x(r * std::sqrt(1 - m * m), 0.0, r * m);
                acc += ws * wr * wm * r * r * std::pow(std::abs(v_a(a, s, x)), p);
            }
        }
    }
    return std::pow(acc, 1.0 / p);
}

double strichartz_trace(const EvolutionTrace& tr, double t, double delta, double p,
                        const Rapidity* sub_a, int n_quad) {
    check_p(p);
    if (!(delta > 0.0 && delta < 1.0)) throw OutOfDomain("delta must lie in (0,1)");
    if (tr.states.empty()) throw NoStoredState("strichartz_trace needs stored states");
    const GridPtr g = tr.states.front().grid;

    // spatial L^p(B_{1-delta}) with weight (1-|Y|^2)^{p-4} of psi_1 at each
    // stored time, then linear interpolation in tau along the S quadrature
    const int nr_q = 48;
    const auto rrule = collocation::gauss_legendre(nr_q);
    RadialInterp interp(*g);
    std::vector<double> lp(tr.states.size());
    for (size_t is = 0; is < tr.states.size(); ++is) {
        VectorXd u1 = tr.states[is].u1;
        if (sub_a) u1 -= psi1_on_grid(*sub_a, *g);
        double acc = 0.0;
        for (int j = 0; j < nr_q; ++j) {
            const double rho = 0.5 * (1.0 - delta) * (rrule.x[j] + 1.0);
            const double wr = 0.5 * (1.0 - delta) * rrule.w[j];
            const double wgt = wr * rho * rho * std::pow(1.0 - rho * rho, p - 4.0);
            if (g->sector == SectorKind::Radial) {
                acc += wgt * std::pow(std::abs(interp.eval(u1, 0, rho)), p);
            } else {
                for (int k = 0; k < g->n_z; ++k)
                    acc += wgt * 0.5 * g->wmu[k] *
                           std::pow(std::abs(interp.eval(u1, k, rho)), p);
            }
        }
        lp[is] = acc;
    }

    const double S_lo = 1.0 / (t * (2.0 * delta - delta * delta)); // |S| upper end
    const double S_hi = 1.0 / (2.0 * t);                           // |S| lower end
    const auto srule = collocation::gauss_legendre(n_quad);
    double acc = 0.0;
    for (int i = 0; i < n_quad; ++i) {
        const double S = 0.5 * (S_hi + S_lo) + 0.5 * (S_lo - S_hi) * srule.x[i];
        const double wS = 0.5 * (S_lo - S_hi) * srule.w[i];
        const double tau = -std::log(S);
        // linear interpolation of the spatial integral in tau
        const auto& ts = tr.stored_times;
        if (tau < ts.front() - 1e-9 || tau > ts.back() + 1e-9)
            throw NoStoredState("strichartz_trace: tau = " + std::to_string(tau) +
                                " outside the stored range");
        size_t hi = 1;
        while (hi + 1 < ts.size() && ts[hi] < tau) ++hi;
        const double w1 = ts[hi] == ts[hi - 1]
                              ? 0.0
                              : (tau - ts[hi - 1]) / (ts[hi] - ts[hi - 1]);
        const double val = (1.0 - w1) * lp[hi - 1] + w1 * lp[hi];
        acc += wS * std::pow(S, p - 5.0) * val;
    }
    return std::pow(acc, 1.0 / p);
}

DecayFit fit_decay(std::span<const double> times, std::span<const double> values,
                   double window_lo, double window_hi) {
    if (times.size() != values.size()) throw ConfigError("fit_decay: length mismatch");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t i = 0; i < times.size(); ++i) {
        if (times[i] < window_lo || times[i] > window_hi) continue;
        if (!(values[i] > 0.0))
            throw NonPositiveValues("fit_decay: value " + std::to_string(values[i]) +
                                    " at time " + std::to_string(times[i]));
        const double y = std::log(values[i]);
        sx += times[i];
        sy += y;
        sxx += times[i] * times[i];
        sxy += times[i] * y;
        ++n;
    }
    if (n < 2) throw ConfigError("fit_decay: window holds fewer than two samples");
    const double det = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / det;
    const double icept = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ymean = sy / n;
    for (size_t i = 0; i < times.size(); ++i) {
        if (times[i] < window_lo || times[i] > window_hi) continue;
        const double y = std::log(values[i]);
        ss_res += std::pow(y - (icept + slope * times[i]), 2);
        ss_tot += std::pow(y - ymean, 2);
    }
    DecayFit f;
    f.rate = -slope;
    f.window_lo = window_lo;
    f.window_hi = window_hi;
    f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

DecayFit fit_decay_power(std::span<const double> times, std::span<const double> values,
                         double window_lo, double window_hi) {
    std::vector<double> lt, lv;
    for (size_t i = 0; i < times.size(); ++i) {
        if (times[i] < window_lo || times[i] > window_hi) continue;
        if (!(times[i] > 0.0)) throw NonPositiveValues("fit_decay_power: nonpositive time");
        lt.push_back(std::log(times[i]));
        lv.push_back(values[i]);
    }
    auto f = fit_decay(lt, lv, -1e300, 1e300);
    f.window_lo = window_lo;
    f.window_hi = window_hi;
    return f;
}

} // namespace cubicwave
