#include "cubicwave/threshold.hpp"

#include <cmath>

namespace cubicwave {

Outcome classify(const FieldState& init, const EvolveConfig& cfg) {
    EvolveConfig c = cfg;
    c.store_stride = std::numeric_limits<int>::max(); // classification needs no states
    c.series_stride = 64;
    c.track_modulation = false;
    return evolve(init, c).outcome;
}

namespace {

FieldState threshold_init(const FieldState& v, double s, const FieldState& base,
                          const FieldState& p_dir) {
    FieldState init = base;
    init += v;
    FieldState sp = p_dir;
    sp *= s;
    init += sp;
    return init;
}

} // namespace

ThresholdResult bisect_threshold(const FieldState& v, double s_lo, double s_hi,
                                 const ThresholdConfig& cfg) {
    const GridPtr g = v.grid;
    const FieldState base = eval_on_grid(psi_pair_a(cfg.evolve.base_a), g);
    const FieldState p_dir = eval_on_grid(eigenfunction_p(cfg.evolve.base_a), g);

    ThresholdResult res;
    res.perp_data = v;

    const Outcome c_lo = classify(threshold_init(v, s_lo, base, p_dir), cfg.evolve);
    const Outcome c_hi = classify(threshold_init(v, s_hi, base, p_dir), cfg.evolve);
    res.classifications.push_back({s_lo, c_lo});
    res.classifications.push_back({s_hi, c_hi});
    const bool lo_det = c_lo == Outcome::BlowupDetected || c_lo == Outcome::DispersionDetected;
    const bool hi_det = c_hi == Outcome::BlowupDetected || c_hi == Outcome::DispersionDetected;
    if (!lo_det || !hi_det || c_lo == c_hi)
        throw BracketInvalid("endpoints classify as " + std::string(outcome_name(c_lo)) +
                             " / " + outcome_name(c_hi));
    res.orientation = c_hi == Outcome::BlowupDetected ? +1 : -1;
    const Outcome blowup_side = Outcome::BlowupDetected;

    double lo = s_lo, hi = s_hi;
    int consecutive_ran = 0;
    for (int it = 0; it < cfg.max_iter && (hi - lo) >= cfg.tol_s; ++it) {
        const double mid = 0.5 * (lo + hi);
        const Outcome cm = classify(threshold_init(v, mid, base, p_dir), cfg.evolve);
        res.classifications.push_back({mid, cm});
        if (cm == Outcome::NumericalFailure)
            throw Inconclusive("midpoint run failed numerically at s = " + std::to_string(mid));
        if (cm == Outcome::Ran) {
            ++consecutive_ran;
            if (consecutive_ran > cfg.max_consecutive_ran && (hi - lo) > 100.0 * cfg.tol_s)
                throw Inconclusive("midpoints keep running out of tau_max at bracket width " +
                                   std::to_string(hi - lo));
        } else {
            consecutive_ran = 0;
        }
        // a run that survives to tau_max sits on the dispersion side of the
        // blowup boundary for bracketing purposes
        const bool mid_on_blowup_side = cm == blowup_side;
        const bool hi_is_blowup = res.orientation > 0;
        if (mid_on_blowup_side == hi_is_blowup)
            hi = mid;
        else
            lo = mid;
    }
    res.s_star = 0.5 * (lo + hi);
    res.bracket_width = hi - lo;

    EvolveConfig final_cfg = cfg.evolve;
    final_cfg.store_stride = std::max(1, static_cast<int>(std::llround(
                                             0.02 / final_cfg.dtau))); // ~ 50 states / tau unit
    EvolutionTrace star = evolve(threshold_init(v, res.s_star, base, p_dir), final_cfg);
    res.tau_reached_at_star = star.outcome == Outcome::Ran ? final_cfg.tau_max
                                                           : star.detector_time;
    res.star_trace = std::move(star);
    return res;
}

ManifoldGraph sample_manifold_graph(const std::vector<FieldState>& vs,
                                    const ThresholdConfig& cfg) {
    ManifoldGraph out;
    std::vector<std::optional<double>> stars(vs.size());
    for (size_t i = 0; i < vs.size(); ++i) {
        ManifoldSample rec;
        rec.index = static_cast<int>(i);
        try {
            // auto-probe a symmetric bracket when the caller gives none
            double s0 = 0.05;
            ThresholdResult r;
            for (int widen = 0;; ++widen) {
                try {
                    r = bisect_threshold(vs[i], -s0, s0, cfg);
                    break;
                } catch (const BracketInvalid&) {
                    if (widen >= 3) throw;
                    s0 *= 2.0;
                }
            }
            rec.s_star = r.s_star;
            rec.bracket_width = r.bracket_width;
            rec.tau_reached = r.tau_reached_at_star;
            stars[i] = r.s_star;
        } catch (const Error& e) {
            rec.error = e.what();
        }
        out.samples.push_back(rec);
    }
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j) {
            if (!stars[i] || !stars[j]) continue;
            const double dv = norm_H(vs[i] - vs[j]);
            if (dv <= 0.0) continue;
            out.max_lipschitz_quotient =
                std::max(out.max_lipschitz_quotient, std::abs(*stars[i] - *stars[j]) / dv);
        }
    return out;
}

FieldState remove_unstable_component(const FieldState& u, const RankOneProjection& proj_P,
                                     const RankOneProjection* proj_Q) {
    check_same_grid(u, proj_P.right, "remove_unstable_component");
    FieldState out = proj_P.remove(u);
    if (proj_Q) {
        check_same_grid(u, proj_Q->right, "remove_unstable_component");
        out = proj_Q->remove(out);
    }
    return out;
}

} // namespace cubicwave
