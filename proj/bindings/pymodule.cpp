#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cubicwave/diagnostics.hpp"
#include "cubicwave/perturbations.hpp"
#include "cubicwave/threshold.hpp"
#include "cubicwave/verify.hpp"

namespace py = pybind11;
using namespace cubicwave;

namespace {

// pybind11 holders must be non-const; wrap the shared immutable grid handle
struct PyGrid {
    GridPtr g;
};

Rapidity make_rapidity(const Vec3& a) { return Rapidity(a, 10.0); }

SpacetimePoint make_point(const std::string& frame, double c0, const Vec3& c) {
    return {frame_from_name(frame), c0, c};
}

py::dict trace_to_dict(const EvolutionTrace& tr) {
    py::dict d;
    d["times"] = tr.times;
    d["h_norms"] = tr.h_norms;
    d["sup_u1"] = tr.sup_u1;
    d["mod_a"] = tr.mod_a;
    d["outcome"] = outcome_name(tr.outcome);
    d["detector_time"] = tr.detector_time;
    return d;
}

} // namespace

PYBIND11_MODULE(_cubicwave, m) {
    m.doc() = "similarity-coordinate laboratory for the focusing cubic wave equation";

    py::register_exception<Error>(m, "CubicwaveError");

    py::class_<SpacetimePoint>(m, "SpacetimePoint")
        .def(py::init(&make_point), py::arg("frame"), py::arg("c0"), py::arg("c"))
        .def_property_readonly("frame",
                               [](const SpacetimePoint& p) { return frame_name(p.frame); })
        .def_readonly("c0", &SpacetimePoint::c0)
        .def_readonly("c", &SpacetimePoint::c)
        .def("__repr__", [](const SpacetimePoint& p) {
            return std::string("SpacetimePoint(") + frame_name(p.frame) + ", " +
                   std::to_string(p.c0) + ")";
        });

    m.def("kelvin", &kelvin);
    m.def("kelvin_inv", &kelvin_inv);
    m.def("to_similarity", &to_similarity);
    m.def("from_similarity", &from_similarity);
    m.def("lorentz_boost",
          [](const Vec3& a, const SpacetimePoint& p) { return lorentz_boost(make_rapidity(a), p); });

    m.def("coeffs_A", [](const Vec3& a) {
        const auto A = coeffs_A(make_rapidity(a));
        return py::make_tuple(A.A0, A.A1, A.A2, A.A3);
    });
    m.def("v_a", [](const Vec3& a, double t, const Vec3& x) { return v_a(make_rapidity(a), t, x); });
    m.def("u_a", [](const Vec3& a, double T, const Vec3& X) { return u_a(make_rapidity(a), T, X); });
    m.def("nabla_n",
          [](const Vec3& a, double t, const Vec3& x) { return nabla_n(make_rapidity(a), t, x); });

    py::class_<PyGrid>(m, "Grid")
        .def_property_readonly("sector",
                               [](const PyGrid& g) { return sector_name(g.g->sector); })
        .def_property_readonly("n_r", [](const PyGrid& g) { return g.g->n_r; })
        .def_property_readonly("n_z", [](const PyGrid& g) { return g.g->n_z; })
        .def_property_readonly("nodes", [](const PyGrid& g) { return g.g->nodes(); })
        .def_property_readonly("xi", [](const PyGrid& g) { return MatrixXd(g.g->xi); })
        .def_property_readonly("w_vol", [](const PyGrid& g) { return g.g->w_vol; });

    m.def("build_radial_grid", [](int n_r) { return PyGrid{build_radial_grid(n_r)}; },
          py::arg("n_r"));
    m.def("build_axisym_grid",
          [](int n_r, int n_z) { return PyGrid{build_axisym_grid(n_r, n_z)}; }, py::arg("n_r"),
          py::arg("n_z"));

    py::class_<FieldState>(m, "FieldState")
        .def(py::init([](const PyGrid& g, VectorXd u1, VectorXd u2) {
                 return FieldState{g.g, std::move(u1), std::move(u2)};
             }),
             py::arg("grid"), py::arg("u1"), py::arg("u2"))
        .def_property_readonly("grid", [](const FieldState& s) { return PyGrid{s.grid}; })
        .def_readwrite("u1", &FieldState::u1)
        .def_readwrite("u2", &FieldState::u2)
        .def("__add__", [](const FieldState& a, const FieldState& b) { return a + b; })
        .def("__sub__", [](const FieldState& a, const FieldState& b) { return a - b; })
        .def("__rmul__", [](const FieldState& a, double c) { return c * a; });

    m.def("psi_pair_on_grid", [](const Vec3& a, const PyGrid& g) {
        return eval_on_grid(psi_pair_a(make_rapidity(a)), g.g);
    });
    m.def("eigenfunction_p_on_grid", [](const Vec3& a, const PyGrid& g) {
        return eval_on_grid(eigenfunction_p(make_rapidity(a)), g.g);
    });
    m.def("eigenfunction_q_on_grid", [](const Vec3& a, int j, const PyGrid& g) {
        return eval_on_grid(eigenfunction_q(make_rapidity(a), j), g.g);
    });
    m.def("inner_product_H", &inner_product_H);
    m.def("norm_H", &norm_H);
    m.def("smooth_perturbation",
          [](const PyGrid& g, std::uint64_t seed, int modes, double amp, double decay) {
              return smooth_perturbation(g.g, seed, modes, amp, decay);
          },
          py::arg("grid"), py::arg("seed"), py::arg("modes"), py::arg("amplitude"),
          py::arg("decay") = 2.0);
    m.def("tail_perturbation",
          [](const PyGrid& g, double alpha, double amp) {
              return tail_perturbation(g.g, alpha, amp);
          },
          py::arg("grid"), py::arg("alpha"), py::arg("amplitude"));

    m.def("assemble_matrix", [](const Vec3& a, const PyGrid& g, bool linearized) {
        return assemble_matrix(make_rapidity(a), g.g,
                               linearized ? OperatorKind::Linearized : OperatorKind::Free)
            .M;
    });
    m.def("apply_L_free", &apply_L_free);
    m.def("apply_N", &apply_N);

    m.def("compute_spectrum",
          [](const Vec3& a, const PyGrid& g, const PyGrid& gf, double tol) {
              const auto rep = compute_spectrum(make_rapidity(a), g.g, gf.g, tol);
              return py::make_tuple(rep.eigenvalues, rep.converged);
          },
          py::arg("a"), py::arg("grid"), py::arg("grid_fine"), py::arg("tol_conv") = 1e-6);

    m.def("evolve",
          [](const FieldState& init, double tau_max, double dtau, int store_stride,
             int series_stride, bool detectors, double base_a3, bool track) {
              EvolveConfig cfg;
              cfg.tau_max = tau_max;
              cfg.dtau = dtau;
              cfg.store_stride = store_stride;
              cfg.series_stride = series_stride;
              cfg.detectors = detectors;
              cfg.base_a = Rapidity::axial(base_a3, 10.0);
              cfg.track_modulation = track;
              return trace_to_dict(evolve(init, cfg));
          },
          py::arg("init"), py::arg("tau_max") = 10.0, py::arg("dtau") = 1e-3,
          py::arg("store_stride") = 100, py::arg("series_stride") = 10,
          py::arg("detectors") = true, py::arg("base_a3") = 0.0, py::arg("track") = false);

    m.def("bisect_threshold",
          [](const FieldState& v, double s_lo, double s_hi, double tau_max, double dtau,
             double tol_s) {
              ThresholdConfig cfg;
              cfg.evolve.tau_max = tau_max;
              cfg.evolve.dtau = dtau;
              cfg.tol_s = tol_s;
              const auto res = bisect_threshold(v, s_lo, s_hi, cfg);
              py::dict d;
              d["s_star"] = res.s_star;
              d["bracket_width"] = res.bracket_width;
              d["tau_reached"] = res.tau_reached_at_star;
              return d;
          },
          py::arg("v"), py::arg("s_lo") = -0.05, py::arg("s_hi") = 0.05,
          py::arg("tau_max") = 26.0, py::arg("dtau") = 2e-3, py::arg("tol_s") = 1e-9);

    m.def("strichartz_family",
          [](const Vec3& a, double t, double delta, double p) {
              return strichartz_family(make_rapidity(a), t, delta, p);
          },
          py::arg("a"), py::arg("t"), py::arg("delta"), py::arg("p") = 4.0);

    m.def("fit_decay", [](const std::vector<double>& ts, const std::vector<double>& vs,
                          double lo, double hi) {
        const auto f = fit_decay(ts, vs, lo, hi);
        return py::make_tuple(f.rate, f.r2);
    });

    m.def("run_verify_suites", [](std::uint64_t seed) {
        py::list out;
        for (const auto& r : run_verify_suites(seed)) {
            py::dict d;
            d["name"] = r.name;
            d["pass"] = r.pass;
            d["measure"] = r.measure;
            d["tolerance"] = r.tolerance;
            out.append(d);
        }
        return out;
    });
}
