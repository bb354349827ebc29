// Command-line laboratory: verify | spectrum | evolve | threshold | report.
// Exit codes: 0 pass, 1 runtime/assertion failure, 2 usage/config error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "cubicwave/config.hpp"
#include "cubicwave/io.hpp"
#include "cubicwave/perturbations.hpp"
#include "cubicwave/verify.hpp"

using namespace cubicwave;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    bool as_json = false;
    bool strict = false;
    int jobs = 1;
    std::uint64_t seed = 1;
};

Config load_config(const CommonOpts& opts) {
    if (opts.config_path.empty()) return Config::parse("");
    return Config::parse_file(opts.config_path);
}

json config_echo_json(const Config& cfg, const CommonOpts& opts) {
    return json{{"config", cfg.echo()}, {"seed", opts.seed}, {"out", opts.out_dir}};
}

GridPtr grid_from_config(const Config& cfg) {
    const std::string sector = cfg.get_string("grid.sector", "radial");
    const int n_r = static_cast<int>(cfg.get_int("grid.n_r", 32));
    if (sector == "radial") return build_radial_grid(n_r);
    if (sector == "axisym")
        return build_axisym_grid(n_r, static_cast<int>(cfg.get_int("grid.n_z", 16)));
    throw ConfigError("grid.sector must be 'radial' or 'axisym'");
}

EvolveConfig evolve_from_config(const Config& cfg) {
    EvolveConfig ec;
    ec.tau_max = cfg.get_double("run.tau_max", ec.tau_max);
    ec.dtau = cfg.get_double("run.dtau", ec.dtau);
    ec.store_stride = static_cast<int>(cfg.get_int("run.store_stride", ec.store_stride));
    ec.series_stride = static_cast<int>(cfg.get_int("run.series_stride", ec.series_stride));
    ec.blowup_sup = cfg.get_double("run.blowup_sup", ec.blowup_sup);
    ec.disperse_norm = cfg.get_double("run.disperse_norm", ec.disperse_norm);
    ec.track_modulation = cfg.get_bool("run.track_modulation", false);
    ec.detectors = cfg.get_bool("run.detectors", true);
    if (!(ec.tau_max > 0.0) || !(ec.dtau > 0.0) || ec.store_stride < 1 || ec.series_stride < 1)
        throw ConfigError("run.* values must be positive");
    return ec;
}

int cmd_verify(const CommonOpts& opts) {
    const Config cfg = load_config(opts);
    const int n_r = static_cast<int>(cfg.get_int("verify.n_r", 24));
    const int n_z = static_cast<int>(cfg.get_int("verify.n_z", 12));
    const auto seed = static_cast<std::uint64_t>(cfg.get_int("verify.seed",
                                                             static_cast<std::int64_t>(opts.seed)));
    cfg.reject_unknown();
    const auto results = run_verify_suites(seed, n_r, n_z);
    if (opts.as_json) {
        json out = json::array();
        for (const auto& r : results)
            out.push_back(json{{"name", r.name},
                               {"pass", r.pass},
                               {"measure", r.measure},
                               {"tolerance", r.tolerance}});
        std::cout << json{{"checks", out}, {"pass", all_pass(results)}}.dump(2) << "\n";
    } else {
        for (const auto& r : results)
            std::printf("%-45s %s  (%.3e < %.0e)\n", r.name.c_str(),
                        r.pass ? "PASS" : "FAIL", r.measure, r.tolerance);
    }
    return all_pass(results) ? 0 : 1;
}

int cmd_spectrum(const CommonOpts& opts) {
    const Config cfg = load_config(opts);
    const std::string sector = cfg.get_string("spectrum.sector", "radial");
    const auto a3_list = cfg.get_list("spectrum.a3_list", {0.0});
    const int n_r = static_cast<int>(cfg.get_int("spectrum.n_r", sector == "radial" ? 32 : 16));
    const int n_z = static_cast<int>(cfg.get_int("spectrum.n_z", 12));
    const int n_r_fine = static_cast<int>(cfg.get_int("spectrum.n_r_fine", n_r + 8));
    const int n_z_fine = static_cast<int>(cfg.get_int("spectrum.n_z_fine", n_z + 8));
    const double tol_conv = cfg.get_double("spectrum.tol_conv", 1e-6);
    const double tol_eig = cfg.get_double("spectrum.tol_eig", 1e-5);
    const double eps = cfg.get_double("spectrum.epsilon_tilde", 0.1);
    cfg.reject_unknown();

    GridPtr g, gf;
    if (sector == "radial") {
        g = build_radial_grid(n_r);
        gf = build_radial_grid(n_r_fine);
    } else if (sector == "axisym") {
        g = build_axisym_grid(n_r, n_z);
        gf = build_axisym_grid(n_r_fine, n_z_fine);
    } else {
        throw ConfigError("spectrum.sector must be 'radial' or 'axisym'");
    }

    for (const double a3 : a3_list) // sector/rapidity mismatches are config errors
        check_sector_supports(*g, Rapidity::axial(a3, 10.0), "spectrum");

    std::vector<SpectrumReport> reports(a3_list.size());
    std::vector<std::string> failures(a3_list.size());
    auto work = [&](size_t i) {
        try {
            reports[i] = compute_spectrum(Rapidity::axial(a3_list[i], 10.0), g, gf, tol_conv);
        } catch (const Error& e) {
            failures[i] = e.what();
        }
    };
    if (opts.jobs > 1) {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        for (int t = 0; t < opts.jobs; ++t)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < a3_list.size(); i = next.fetch_add(1))
                    work(i);
            });
        for (auto& th : pool) th.join();
    } else {
        for (size_t i = 0; i < a3_list.size(); ++i) work(i);
    }

    bool all_pass_gap = true;
    json summary = json::array();
    std::filesystem::create_directories(opts.out_dir);
    for (size_t i = 0; i < a3_list.size(); ++i) {
        if (!failures[i].empty()) throw EigenFailure(failures[i]);
        const auto gap = spectral_gap_check(reports[i], eps, tol_eig);
        all_pass_gap = all_pass_gap && gap.pass;
        const auto path = std::filesystem::path(opts.out_dir) /
                          ("spectrum_" + std::to_string(i) + ".json");
        io::write_text(path, io::spectrum_to_json(reports[i]).dump(2) + "\n");
        summary.push_back(json{{"a3", a3_list[i]},
                               {"gap_pass", gap.pass},
                               {"vacuous", gap.vacuous},
                               {"violators", gap.violators.size()},
                               {"file", path.string()}});
        if (!opts.as_json)
            std::printf("a3 = %-6g gap %s (%zu converged)\n", a3_list[i],
                        gap.pass ? "PASS" : "FAIL",
                        reports[i].converged_eigenvalues().size());
    }
    if (opts.as_json) std::cout << summary.dump(2) << "\n";
    return all_pass_gap ? 0 : 1;
}

FieldState initial_data(const Config& cfg, const GridPtr& g, const Rapidity& base,
                        std::uint64_t seed, bool* ref_family) {
    const double fc = cfg.get_double("init.family_coeff", 1.0);
    *ref_family = fc != 0.0;
    FieldState init = fc * eval_on_grid(psi_pair_a(base), g);
    const double pc = cfg.get_double("init.p_coeff", 0.0);
    if (pc != 0.0) init += pc * eval_on_grid(eigenfunction_p(base), g);
    const double qc = cfg.get_double("init.q_coeff", 0.0);
    if (qc != 0.0) {
        if (g->sector != SectorKind::Axisym)
            throw ConfigError("init.q_coeff needs the axisym sector");
        init += qc * eval_on_grid(eigenfunction_q(base, 3), g);
    }
    const double amp = cfg.get_double("init.bump_amp", 0.0);
    if (amp != 0.0) {
        const std::string kind = cfg.get_string("init.bump_kind", "smooth");
        const int modes = static_cast<int>(cfg.get_int("init.bump_modes", 16));
        const double decay = cfg.get_double("init.bump_decay", 2.0);
        if (kind == "smooth")
            init += smooth_perturbation(g, seed, modes, amp, decay);
        else if (kind == "rough")
            init += rough_perturbation(g, seed, amp, modes);
        else if (kind == "tail")
            init += tail_perturbation(g, cfg.get_double("init.tail_alpha", 0.8), amp);
        else
            throw ConfigError("init.bump_kind must be 'smooth', 'rough' or 'tail'");
    }
    return init;
}

int cmd_evolve(const CommonOpts& opts) {
    const Config cfg = load_config(opts);
    const GridPtr g = grid_from_config(cfg);
    EvolveConfig ec = evolve_from_config(cfg);
    ec.base_a = Rapidity::axial(cfg.get_double("init.a3", 0.0), 1.0);
    const auto seed =
        static_cast<std::uint64_t>(cfg.get_int("init.seed", static_cast<std::int64_t>(opts.seed)));
    const FieldState init = initial_data(cfg, g, ec.base_a, seed, &ec.ref_family);
    const bool save_states = cfg.get_bool("run.save_states", true);
    cfg.reject_unknown();

    EvolutionTrace tr = evolve(init, ec);
    if (!save_states) {
        tr.states.clear();
        tr.stored_times.clear();
    }
    io::save_run(tr, config_echo_json(cfg, opts), opts.out_dir);
    if (opts.as_json)
        std::cout << json{{"outcome", outcome_name(tr.outcome)},
                          {"detector_time", tr.detector_time},
                          {"samples", tr.times.size()}}
                         .dump(2)
                  << "\n";
    else
        std::printf("outcome %s at tau = %g (%zu samples) -> %s\n", outcome_name(tr.outcome),
                    tr.detector_time, tr.times.size(), opts.out_dir.c_str());
    if (tr.outcome == Outcome::NumericalFailure && opts.strict) return 1;
    return 0;
}

int cmd_threshold(const CommonOpts& opts) {
    const Config cfg = load_config(opts);
    const GridPtr g = grid_from_config(cfg);
    ThresholdConfig tc;
    tc.evolve = evolve_from_config(cfg);
    tc.evolve.base_a = Rapidity::axial(cfg.get_double("init.a3", 0.0), 1.0);
    tc.tol_s = cfg.get_double("threshold.tol_s", 1e-10);
    tc.max_iter = static_cast<int>(cfg.get_int("threshold.max_iter", 60));
    const double s_lo = cfg.get_double("threshold.s_lo", -0.05);
    const double s_hi = cfg.get_double("threshold.s_hi", 0.05);
    const int n_pert = static_cast<int>(cfg.get_int("threshold.n_perturbations", 1));
    const double amp = cfg.get_double("threshold.amp", 1e-2);
    const int modes = static_cast<int>(cfg.get_int("threshold.bump_modes", 16));
    const double decay = cfg.get_double("threshold.bump_decay", 2.0);
    const std::string kind = cfg.get_string("threshold.bump_kind", "smooth");
    const bool include_zero = cfg.get_bool("threshold.include_zero", true);
    cfg.reject_unknown();

    const auto P = projection_for(tc.evolve.base_a, g, ProjTarget::P);
    std::vector<FieldState> vs;
    if (include_zero) vs.push_back(FieldState::zero(g));
    for (int i = 0; i < n_pert; ++i) {
        FieldState v = kind == "rough"
                           ? rough_perturbation(g, opts.seed + i, amp, modes)
                           : smooth_perturbation(g, opts.seed + i, modes, amp, decay);
        v = P.remove(v);
        if (norm_H(v) > 0.0) v *= amp / norm_H(v);
        vs.push_back(std::move(v));
    }

    const json echo = config_echo_json(cfg, opts);
    std::filesystem::create_directories(opts.out_dir);
    const auto state_path = std::filesystem::path(opts.out_dir) / "threshold_state.json";
    json state = json::object();
    if (std::ifstream in{state_path}; in) in >> state;

    std::vector<ManifoldSample> samples(vs.size());
    std::vector<std::string> keys(vs.size());
    std::atomic<size_t> next{0};
    auto work = [&](size_t i) {
        keys[i] = io::threshold_record_key(vs[i], echo);
        if (state.contains(keys[i])) { // resume: identical (v, cfg) already done
            const auto& r = state.at(keys[i]);
            samples[i] = {static_cast<int>(i), r.at("s_star").get<double>(),
                          r.at("bracket_width").get<double>(),
                          r.at("tau_reached").get<double>(),
                          r.value("error", std::string{})};
            return;
        }
        ManifoldSample rec;
        rec.index = static_cast<int>(i);
        try {
            const auto res = bisect_threshold(vs[i], s_lo, s_hi, tc);
            rec.s_star = res.s_star;
            rec.bracket_width = res.bracket_width;
            rec.tau_reached = res.tau_reached_at_star;
        } catch (const Error& e) {
            rec.error = e.what();
        }
        samples[i] = rec;
    };
    if (opts.jobs > 1) {
        std::vector<std::thread> pool;
        for (int t = 0; t < opts.jobs; ++t)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < vs.size(); i = next.fetch_add(1)) work(i);
            });
        for (auto& th : pool) th.join();
    } else {
        for (size_t i = 0; i < vs.size(); ++i) work(i);
    }

    std::string jsonl, csv = "index,s_star,bracket_width,tau_reached,error\n";
    double lip = 0.0;
    for (size_t i = 0; i < vs.size(); ++i) {
        state[keys[i]] = io::threshold_record(keys[i], samples[i]);
        jsonl += io::threshold_record(keys[i], samples[i]).dump() + "\n";
        csv += std::to_string(samples[i].index) + "," + io::fmt(samples[i].s_star) + "," +
               io::fmt(samples[i].bracket_width) + "," + io::fmt(samples[i].tau_reached) + "," +
               samples[i].error + "\n";
        for (size_t j = 0; j < i; ++j) {
            if (!samples[i].error.empty() || !samples[j].error.empty()) continue;
            const double dv = norm_H(vs[i] - vs[j]);
            if (dv > 0.0)
                lip = std::max(lip, std::abs(samples[i].s_star - samples[j].s_star) / dv);
        }
    }
    io::write_text(std::filesystem::path(opts.out_dir) / "threshold.jsonl", jsonl);
    csv += "# max_lipschitz_quotient," + io::fmt(lip) + "\n";
    io::write_text(std::filesystem::path(opts.out_dir) / "threshold_summary.csv", csv);
    io::write_text(state_path, state.dump(2) + "\n");

    bool ok = true;
    for (const auto& s : samples) {
        if (!s.error.empty()) ok = false;
        if (!opts.as_json)
            std::printf("v[%d]: s* = %s  width = %.2e  tau = %.2f %s\n", s.index,
                        io::fmt(s.s_star).c_str(), s.bracket_width, s.tau_reached,
                        s.error.c_str());
    }
    if (opts.as_json)
        std::cout << json{{"samples", vs.size()}, {"max_lipschitz_quotient", lip}, {"pass", ok}}
                         .dump(2)
                  << "\n";
    return ok ? 0 : 1;
}

int cmd_report(const CommonOpts& opts) {
    const Config cfg = load_config(opts);
    const std::string run_dir = cfg.get_string("report.run_dir", opts.out_dir);
    const double delta = cfg.get_double("report.delta", 0.5);
    const double p = cfg.get_double("report.p", 4.0);
    const double t_lo = cfg.get_double("report.t_lo", 4.0);
    const double t_hi = cfg.get_double("report.t_hi", 64.0);
    const int n_t = static_cast<int>(cfg.get_int("report.n_t", 9));
    const double w_lo = cfg.get_double("report.window_lo", 1.5);
    const double w_hi = cfg.get_double("report.window_hi", 5.0);
    const bool subtract_family = cfg.get_bool("report.subtract_family", false);
    cfg.reject_unknown();

    if (!std::filesystem::exists(std::filesystem::path(run_dir) / "run.json"))
        throw ConfigError("no run outputs under '" + run_dir + "'");
    const EvolutionTrace tr = io::load_run(run_dir);

    json fits = json::array(), series = json::array();
    std::string csv = "name,x,value\n";
    auto add_fit = [&](const std::string& name, const DecayFit& f) {
        fits.push_back(json{{"name", name},
                            {"rate", f.rate},
                            {"window", {f.window_lo, f.window_hi}},
                            {"r2", f.r2}});
        if (!opts.as_json)
            std::printf("%-28s rate %+.4f  r2 %.4f  window [%g, %g]\n", name.c_str(), f.rate,
                        f.r2, f.window_lo, f.window_hi);
    };

    bool have_any = false;
    if (!tr.h_norms.empty() && *std::max_element(tr.h_norms.begin(), tr.h_norms.end()) > 0.0) {
        try {
            add_fit("h_norm_tau_rate", fit_decay(tr.times, tr.h_norms, w_lo, w_hi));
            have_any = true;
        } catch (const Error&) {
        }
    }
    if (!tr.states.empty()) {
        std::vector<double> ts, Sv;
        const Rapidity base = tr.base_a;
        for (int i = 0; i < n_t; ++i) {
            const double t = t_lo * std::pow(t_hi / t_lo, double(i) / (n_t - 1));
            try {
                const double S =
                    strichartz_trace(tr, t, delta, p, subtract_family ? &base : nullptr);
                ts.push_back(t);
                Sv.push_back(S);
                series.push_back(json{{"name", "strichartz"}, {"t", t}, {"value", S}});
                csv += "strichartz," + io::fmt(t) + "," + io::fmt(S) + "\n";
            } catch (const Error&) {
            }
        }
        if (ts.size() >= 3) {
            auto f = fit_decay_power(ts, Sv, 0.0, 1e300);
            add_fit("strichartz_t_exponent", f);
            have_any = true;
        }
        // |T|^{1/2} (H1 + nabla_n) of the perturbation against |T|
        std::vector<double> Ts, q;
        for (double tau = std::max(0.25, tr.stored_times.front());
             tau <= tr.stored_times.back() + 1e-9; tau += 0.25) {
            const double T = -std::exp(-tau);
            try {
                const auto n = sigma_T_norms(tr, T);
                Ts.push_back(-T);
                q.push_back(std::sqrt(-T) * (n.h1 + n.nabla_n_l2));
                series.push_back(json{{"name", "sigmaT"}, {"absT", -T}, {"value", q.back()}});
                csv += "sigmaT," + io::fmt(-T) + "," + io::fmt(q.back()) + "\n";
            } catch (const Error&) {
            }
        }
        if (q.size() >= 3 && *std::max_element(q.begin(), q.end()) > 0.0) {
            try {
                auto f = fit_decay_power(Ts, q, 0.0, 1e300);
                f.rate = -f.rate; // values ~ |T|^{+e}: report e
                add_fit("sigmaT_absT_exponent", f);
                have_any = true;
            } catch (const Error&) {
            }
        }
    }
    if (!have_any) throw ConfigError("run under '" + run_dir + "' holds nothing to fit");

    const json report{{"fits", fits}, {"norm_series", series}};
    io::write_text(std::filesystem::path(opts.out_dir) / "report.json", report.dump(2) + "\n");
    io::write_text(std::filesystem::path(opts.out_dir) / "report.csv", csv);
    if (opts.as_json) std::cout << report.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for selfsimilar blowup of the cubic wave equation"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    CommonOpts opts;
    app.add_option("--config", opts.config_path, "TOML config file")->capture_default_str();
    app.add_option("--out", opts.out_dir, "output directory")->capture_default_str();
    app.add_flag("--json", opts.as_json, "machine-readable stdout");
    app.add_flag("--strict", opts.strict, "exit 1 on NumericalFailure outcomes");
    app.add_option("--jobs", opts.jobs, "worker pool size for batch commands")
        ->capture_default_str();
    app.add_option("--seed", opts.seed, "seed for random perturbations")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run the exact-identity property suites");
    auto* spectrum = app.add_subcommand("spectrum", "resolution-filtered spectra of L_a");
    auto* ev = app.add_subcommand("evolve", "integrate the nonlinear system");
    auto* th = app.add_subcommand("threshold", "bisect the blowup/dispersion threshold");
    auto* rep = app.add_subcommand("report", "norms, Strichartz functionals and decay fits");

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(verify)) return cmd_verify(opts);
        if (app.got_subcommand(spectrum)) return cmd_spectrum(opts);
        if (app.got_subcommand(ev)) return cmd_evolve(opts);
        if (app.got_subcommand(th)) return cmd_threshold(opts);
        if (app.got_subcommand(rep)) return cmd_report(opts);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const BadResolution& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const UnsupportedRapidity& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const SectorUnsupported& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
