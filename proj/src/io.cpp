#include "cubicwave/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

namespace cubicwave::io {

json point_to_json(const SpacetimePoint& p) {
    return json{{"frame", frame_name(p.frame)}, {"c0", p.c0}, {"c", {p.c[0], p.c[1], p.c[2]}}};
}

SpacetimePoint point_from_json(const json& j) {
    SpacetimePoint p;
    p.frame = frame_from_name(j.at("frame").get<std::string>());
    p.c0 = j.at("c0").get<double>();
    const auto& c = j.at("c");
    if (c.size() != 3) throw ConfigError("point needs a 3-vector 'c'");
    p.c = Vec3(c[0].get<double>(), c[1].get<double>(), c[2].get<double>());
    return p;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
    out << text;
}

namespace {

json grid_meta(const Grid& g) {
    return json{{"sector", sector_name(g.sector)}, {"n_r", g.n_r}, {"n_z", g.n_z}};
}

} // namespace

void write_field(const FieldState& s, const std::filesystem::path& csv_path) {
    std::string out = "x1,x2,x3,u1,u2\n";
    for (int i = 0; i < s.grid->nodes(); ++i) {
        out += fmt(s.grid->xi(i, 0)) + "," + fmt(s.grid->xi(i, 1)) + "," +
               fmt(s.grid->xi(i, 2)) + "," + fmt(s.u1[i]) + "," + fmt(s.u2[i]) + "\n";
    }
    write_text(csv_path, out);
    json meta = grid_meta(*s.grid);
    auto j = csv_path;
    j.replace_extension(".json");
    write_text(j, meta.dump(2) + "\n");
}

void write_trace(const EvolutionTrace& tr, const json& config_echo,
                 const std::filesystem::path& csv_path,
                 const std::filesystem::path& json_path) {
    std::string out = "tau,h_norm,sup_u1,a3\n";
    for (size_t i = 0; i < tr.times.size(); ++i)
        out += fmt(tr.times[i]) + "," + fmt(tr.h_norms[i]) + "," + fmt(tr.sup_u1[i]) + "," +
               fmt(tr.mod_a[i]) + "\n";
    write_text(csv_path, out);
    json meta{{"config", config_echo},
              {"outcome", outcome_name(tr.outcome)},
              {"detector_time", tr.detector_time},
              {"samples", tr.times.size()},
              {"stored_states", tr.stored_times.size()}};
    write_text(json_path, meta.dump(2) + "\n");
}

json spectrum_to_json(const SpectrumReport& r) {
    json evs = json::array();
    for (size_t i = 0; i < r.eigenvalues.size(); ++i)
        evs.push_back(json{{"re", r.eigenvalues[i].real()},
                           {"im", r.eigenvalues[i].imag()},
                           {"converged", static_cast<bool>(r.converged[i])}});
    return json{{"a", {r.a.vec()[0], r.a.vec()[1], r.a.vec()[2]}},
                {"sector", sector_name(r.sector)},
                {"N_pair",
                 {{"coarse", {r.N_coarse.first, r.N_coarse.second}},
                  {"fine", {r.N_fine.first, r.N_fine.second}}}},
                {"tol_conv", r.tol_conv},
                {"eigenvalues", evs}};
}

void write_operator_matrix(const OperatorMatrix& op, const std::filesystem::path& csv_path) {
    std::string out;
    out.reserve(static_cast<size_t>(op.M.size()) * 20);
    for (Eigen::Index i = 0; i < op.M.rows(); ++i) {
        for (Eigen::Index j = 0; j < op.M.cols(); ++j) {
            out += fmt(op.M(i, j));
            out += j + 1 < op.M.cols() ? ',' : '\n';
        }
    }
    write_text(csv_path, out);
    json meta = grid_meta(*op.grid);
    meta["kind"] = op.kind == OperatorKind::Free ? "free" : "linearized";
    meta["a"] = {op.a.vec()[0], op.a.vec()[1], op.a.vec()[2]};
    auto j = csv_path;
    j.replace_extension(".json");
    write_text(j, meta.dump(2) + "\n");
}

std::string threshold_record_key(const FieldState& v, const json& cfg_echo) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const void* data, size_t n) {
        const auto* b = static_cast<const unsigned char*>(data);
        for (size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 0x100000001b3ULL;
        }
    };
    mix(v.u1.data(), sizeof(double) * v.u1.size());
    mix(v.u2.data(), sizeof(double) * v.u2.size());
    const std::string cfg = cfg_echo.dump();
    mix(cfg.data(), cfg.size());
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

json threshold_record(const std::string& key, const ManifoldSample& rec) {
    return json{{"key", key},          {"index", rec.index},
                {"s_star", rec.s_star}, {"bracket_width", rec.bracket_width},
                {"tau_reached", rec.tau_reached}, {"error", rec.error}};
}

void save_run(const EvolutionTrace& tr, const json& config_echo,
              const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_trace(tr, config_echo, dir / "trace.csv", dir / "run.json");

    json meta;
    {
        std::ifstream in(dir / "run.json");
        in >> meta;
    }
    meta["base_a3"] = tr.base_a.vec()[2];
    meta["ref_family"] = tr.ref_family;
    meta["outcome"] = outcome_name(tr.outcome);
    if (!tr.states.empty()) {
        meta["grid"] = grid_meta(*tr.states.front().grid);
        json st = json::array();
        std::filesystem::create_directories(dir / "states");
        for (size_t i = 0; i < tr.states.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "%06zu.csv", i);
            write_field(tr.states[i], dir / "states" / name);
            st.push_back(json{{"tau", tr.stored_times[i]}, {"file", std::string(name)}});
        }
        meta["states"] = st;
    }
    write_text(dir / "run.json", meta.dump(2) + "\n");
}

namespace {

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path, size_t cols) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read '" + path.string() + "'");
    std::string line;
    std::getline(in, line); // header
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) row.push_back(std::stod(tok));
        if (row.size() != cols)
            throw ConfigError("bad CSV row in '" + path.string() + "'");
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

EvolutionTrace load_run(const std::filesystem::path& dir) {
    std::ifstream in(dir / "run.json");
    if (!in) throw ConfigError("no run.json under '" + dir.string() + "'");
    json meta;
    in >> meta;

    EvolutionTrace tr;
    tr.outcome = outcome_from_name(meta.at("outcome").get<std::string>());
    tr.detector_time = meta.at("detector_time").get<double>();
    tr.base_a = Rapidity::axial(meta.value("base_a3", 0.0), 10.0);
    tr.ref_family = meta.value("ref_family", true);
    for (const auto& row : read_csv(dir / "trace.csv", 4)) {
        tr.times.push_back(row[0]);
        tr.h_norms.push_back(row[1]);
        tr.sup_u1.push_back(row[2]);
        tr.mod_a.push_back(row[3]);
    }
    if (meta.contains("states")) {
        const auto& gm = meta.at("grid");
        const std::string sector = gm.at("sector").get<std::string>();
        const GridPtr g = sector == "radial"
                              ? build_radial_grid(gm.at("n_r").get<int>())
                              : build_axisym_grid(gm.at("n_r").get<int>(),
                                                  gm.at("n_z").get<int>());
        for (const auto& st : meta.at("states")) {
            const auto rows =
                read_csv(dir / "states" / st.at("file").get<std::string>(), 5);
            if (static_cast<int>(rows.size()) != g->nodes())
                throw ConfigError("state file does not match the grid");
            FieldState s = FieldState::zero(g);
            for (int i = 0; i < g->nodes(); ++i) {
                s.u1[i] = rows[i][3];
                s.u2[i] = rows[i][4];
            }
            tr.stored_times.push_back(st.at("tau").get<double>());
            tr.states.push_back(std::move(s));
        }
    }
    return tr;
}

} // namespace cubicwave::io
