#include "cubicwave/evolution.hpp"

#include <cmath>
#include <numbers>

namespace cubicwave {

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Ran: return "Ran";
        case Outcome::BlowupDetected: return "BlowupDetected";
        case Outcome::DispersionDetected: return "DispersionDetected";
        case Outcome::NumericalFailure: return "NumericalFailure";
    }
    return "?";
}

Outcome outcome_from_name(const std::string& s) {
    if (s == "Ran") return Outcome::Ran;
    if (s == "BlowupDetected") return Outcome::BlowupDetected;
    if (s == "DispersionDetected") return Outcome::DispersionDetected;
    if (s == "NumericalFailure") return Outcome::NumericalFailure;
    throw ConfigError("unknown outcome '" + s + "'");
}

double psi0_norm(const GridPtr& g) {
    return norm_H(eval_on_grid(psi_pair_a(Rapidity{}), g));
}

double boundary_spacing_dtau_cap(const Grid& g) {
    const int N = 2 * g.n_r - 1;
    return 0.5 * (1.0 - std::cos(std::numbers::pi / N));
}

namespace {

// nonlinear/linear right-hand sides with the potential evaluated once
struct Stepper {
    const Grid* g;
    bool linear = false;
    VectorXd pot; // 3 psi_{a,1}^2, empty for the free/nonlinear paths

    void rhs(const VectorXd& u1, const VectorXd& u2, VectorXd& o1, VectorXd& o2) const {
        o1 = -g->r_dr(u1) - u1 + u2;
        o2 = g->laplacian(u1) - g->r_dr(u2) - 2.0 * u2;
        if (linear) {
            if (pot.size()) o2 += pot.cwiseProduct(u1);
        } else {
            o2.array() += u1.array().cube();
        }
    }

    void rk4(VectorXd& u1, VectorXd& u2, double h) const {
        VectorXd k11, k12, k21, k22, k31, k32, k41, k42;
        rhs(u1, u2, k11, k12);
        rhs(u1 + 0.5 * h * k11, u2 + 0.5 * h * k12, k21, k22);
        rhs(u1 + 0.5 * h * k21, u2 + 0.5 * h * k22, k31, k32);
        rhs(u1 + h * k31, u2 + h * k32, k41, k42);
        u1 += (h / 6.0) * (k11 + 2.0 * k21 + 2.0 * k31 + k41);
        u2 += (h / 6.0) * (k12 + 2.0 * k22 + 2.0 * k32 + k42);
    }
};

} // namespace

FieldState rhs_full(const FieldState& s) { return apply_L_free(s) + apply_N(s); }

FieldState step_rk4(const FieldState& s, double dtau) {
    if (!(dtau > 0.0)) throw ConfigError("step_rk4 needs dtau > 0");
    Stepper st{s.grid.get(), false, {}};
    FieldState out = s;
    st.rk4(out.u1, out.u2, dtau);
    if (!out.finite()) throw Error("NumericalFailure: non-finite state after step");
    return out;
}

EvolutionTrace evolve(const FieldState& init, const EvolveConfig& cfg,
                      const RankOneProjection* q_gauge) {
    if (!(cfg.tau_max > 0.0) || !(cfg.dtau > 0.0))
        throw ConfigError("evolve needs tau_max > 0 and dtau > 0");
    if (!(cfg.blowup_sup > 0.0)) throw ConfigError("evolve needs blowup_sup > 0");
    const GridPtr g = init.grid;
    check_sector_supports(*g, cfg.base_a, "evolve");

    RankOneProjection gauge_local;
    const RankOneProjection* gauge = q_gauge;
    if (cfg.track_modulation) {
        if (g->sector != SectorKind::Axisym)
            throw SectorUnsupported("modulation tracking requires the Axisym sector");
        if (!gauge) {
            gauge_local = projection_for(cfg.base_a, g, ProjTarget::Q3);
            gauge = &gauge_local;
        }
    }

    const double disperse =
        cfg.disperse_norm > 0.0 ? cfg.disperse_norm : 0.05 * psi0_norm(g);

    EvolutionTrace tr;
    tr.base_a = cfg.base_a;
    tr.ref_family = cfg.ref_family;
    Stepper st{g.get(), false, {}};

    VectorXd u1 = init.u1, u2 = init.u2;
    double a3 = cfg.base_a[2];
    FieldState psi_ref = cfg.ref_family ? eval_on_grid(psi_pair_a(cfg.base_a), g)
                                        : FieldState::zero(g);

    const auto nsteps = static_cast<long>(std::llround(cfg.tau_max / cfg.dtau));
    auto sample = [&](long step, double t) {
        const FieldState cur{g, u1, u2};
        if (cfg.track_modulation) {
            a3 = track_modulation_gauge(cur, *gauge, a3).vec()[2];
            psi_ref = eval_on_grid(psi_pair_a(Rapidity::axial(a3, 10.0)), g);
        }
        tr.times.push_back(t);
        tr.h_norms.push_back(norm_H(cur - psi_ref));
        tr.sup_u1.push_back(u1.cwiseAbs().maxCoeff());
        tr.mod_a.push_back(a3);
        if (step % cfg.store_stride == 0) {
            tr.stored_times.push_back(t);
            tr.states.push_back(cur);
        }
    };
    sample(0, 0.0);

    tr.outcome = Outcome::Ran;
    double t = 0.0;
    for (long i = 1; i <= nsteps; ++i) {
        st.rk4(u1, u2, cfg.dtau);
        t = static_cast<double>(i) * cfg.dtau;
        if (!u1.allFinite() || !u2.allFinite()) {
            tr.outcome = Outcome::NumericalFailure;
            tr.detector_time = t;
            return tr;
        }
        if (i % cfg.series_stride == 0 || i == nsteps) sample(i, t);
        if (cfg.detectors) {
            if (u1.cwiseAbs().maxCoeff() > cfg.blowup_sup) {
                tr.outcome = Outcome::BlowupDetected;
                tr.detector_time = t;
                return tr;
            }
            if (norm_H({g, u1, u2}) < disperse) {
                tr.outcome = Outcome::DispersionDetected;
                tr.detector_time = t;
                return tr;
            }
        }
    }
    tr.detector_time = t;
    return tr;
}

EvolutionTrace evolve_linear(const FieldState& init, const Rapidity& a, double tau_max,
                             double dtau, LinearKind kind, int series_stride) {
    if (!(tau_max > 0.0) || !(dtau > 0.0))
        throw ConfigError("evolve_linear needs tau_max > 0 and dtau > 0");
    const GridPtr g = init.grid;
    check_sector_supports(*g, a, "evolve_linear");
    Stepper st{g.get(), true, {}};
    if (kind == LinearKind::Linearized)
        st.pot = (3.0 * psi1_on_grid(a, *g).array().square()).matrix();

    EvolutionTrace tr;
    tr.base_a = a;
    VectorXd u1 = init.u1, u2 = init.u2;
    auto sample = [&](double t) {
        tr.times.push_back(t);
        tr.h_norms.push_back(norm_H({g, u1, u2}));
        tr.sup_u1.push_back(u1.cwiseAbs().maxCoeff());
        tr.mod_a.push_back(a[2]);
    };
    sample(0.0);
    const auto nsteps = static_cast<long>(std::llround(tau_max / dtau));
    for (long i = 1; i <= nsteps; ++i) {
        st.rk4(u1, u2, dtau);
        if (!u1.allFinite() || !u2.allFinite()) {
            tr.outcome = Outcome::NumericalFailure;
            tr.detector_time = i * dtau;
            return tr;
        }
        if (i % series_stride == 0 || i == nsteps) sample(i * dtau);
    }
    tr.outcome = Outcome::Ran;
    tr.detector_time = tau_max;
    tr.stored_times.push_back(tau_max);
    tr.states.emplace_back(g, u1, u2);
    return tr;
}

const FieldState* EvolutionTrace::state_near(double tau, double* stored_tau) const {
    const FieldState* best = nullptr;
    double bestd = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < stored_times.size(); ++i) {
        const double d = std::abs(stored_times[i] - tau);
        if (d < bestd) {
            bestd = d;
            best = &states[i];
            if (stored_tau) *stored_tau = stored_times[i];
        }
    }
    if (!best) return nullptr;
    double dt_store = stored_times.size() > 1
                          ? (stored_times.back() - stored_times.front()) /
                                static_cast<double>(stored_times.size() - 1)
                          : 0.0;
    if (stored_times.size() > 1 && bestd > 0.75 * dt_store) return nullptr;
    return best;
}

double EvolutionTrace::mod_a_at(double tau) const {
    if (times.empty()) return base_a[2];
    size_t best = 0;
    for (size_t i = 1; i < times.size(); ++i)
        if (std::abs(times[i] - tau) < std::abs(times[best] - tau)) best = i;
    return mod_a[best];
}

Rapidity track_modulation(const FieldState& s, double a3_seed) {
    if (s.grid->sector != SectorKind::Axisym)
        throw SectorUnsupported("track_modulation requires the Axisym sector");
    double a3 = a3_seed;
    for (int it = 0; it < 50; ++it) {
        const Rapidity a = Rapidity::axial(a3, 10.0);
        const FieldState q = eval_on_grid(eigenfunction_q(a, 3), s.grid);
        const FieldState r = s - eval_on_grid(psi_pair_a(a), s.grid);
        const double grad = inner_product_H(q, r);
        if (std::abs(grad) < 1e-10) return a;
        a3 += grad / inner_product_H(q, q);
        if (!std::isfinite(a3)) break;
    }
    throw FitDiverged("track_modulation: no convergence after 50 iterations");
}

Rapidity track_modulation_gauge(const FieldState& s, const RankOneProjection& q_proj,
                                double a3_seed) {
    double a3 = a3_seed;
    for (int it = 0; it < 60; ++it) {
        const Rapidity a = Rapidity::axial(a3, 10.0);
        const double h = inner_product_H(q_proj.left, s - eval_on_grid(psi_pair_a(a), s.grid));
        const double dh =
            inner_product_H(q_proj.left, eval_on_grid(eigenfunction_q(a, 3), s.grid));
        const double step = h / dh;
        a3 += step;
        if (std::abs(step) < 1e-14) return Rapidity::axial(a3, 10.0);
    }
    throw FitDiverged("track_modulation_gauge: no convergence after 60 iterations");
}

Vec3 modulation_rhs(const FieldState& s, const Rapidity& a, const RankOneProjection& q_proj) {
    const GridPtr g = s.grid;
    check_sector_supports(*g, a, "modulation_rhs");
    const VectorXd psi1_now = psi1_on_grid(a, *g);
    const VectorXd psi1_ref = psi1_on_grid(q_proj.a, *g);
    const FieldState phi = s - eval_on_grid(psi_pair_a(a), g);

    FieldState rhs = FieldState::zero(g);
    rhs.u2 = 3.0 * (psi1_now.array().square() - psi1_ref.array().square()) * phi.u1.array() +
             3.0 * psi1_now.array() * phi.u1.array().square() + phi.u1.array().cube();

    const double num = inner_product_H(q_proj.left, rhs);
    const double den =
        inner_product_H(q_proj.left, eval_on_grid(eigenfunction_q(a, 3), g));
    return Vec3(0.0, 0.0, num / den);
}

} // namespace cubicwave
