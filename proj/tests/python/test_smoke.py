import math

import pytest

cw = pytest.importorskip("_cubicwave")

SQRT2 = math.sqrt(2.0)


def test_kelvin_involution():
    p = cw.SpacetimePoint("hyperboloidal", -2.0, [1.0, 0.0, 0.0])
    q = cw.kelvin(p)
    assert q.frame == "cartesian"
    assert abs(q.c0 - 2.0 / 3.0) < 1e-14
    back = cw.kelvin_inv(q)
    assert abs(back.c0 - p.c0) < 1e-12


def test_boost_coefficients_identity():
    A0, A1, A2, A3 = cw.coeffs_A([0.3, -0.2, 0.5])
    assert abs(A0 * A0 - A1 * A1 - A2 * A2 - A3 * A3 - 1.0) < 1e-12


def test_family_values():
    assert abs(cw.v_a([0, 0, 0], 2.0, [0, 0, 0]) - SQRT2 / 2) < 1e-14
    assert abs(cw.u_a([0, 0, 0], -0.5, [0, 0, 0]) - 2 * SQRT2) < 1e-14


def test_grid_and_norms():
    g = cw.build_radial_grid(16)
    psi = cw.psi_pair_on_grid([0, 0, 0], g)
    n2 = cw.inner_product_H(psi, psi)
    assert abs(n2 - (8 * math.pi + 8 * math.pi / 3)) < 1e-10


def test_spectrum_contains_unstable_eigenvalue():
    g = cw.build_radial_grid(16)
    gf = cw.build_radial_grid(24)
    evs, conv = cw.compute_spectrum([0, 0, 0], g, gf)
    best = min(abs(z - 1.0) for z, c in zip(evs, conv) if c)
    assert best < 1e-8


def test_static_evolution_stays_on_family():
    g = cw.build_radial_grid(16)
    psi = cw.psi_pair_on_grid([0, 0, 0], g)
    tr = cw.evolve(psi, tau_max=2.0, dtau=1e-3, series_stride=100)
    assert tr["outcome"] == "Ran"
    assert max(tr["h_norms"]) < 1e-8


def test_unstable_mode_triggers_blowup():
    g = cw.build_radial_grid(16)
    init = cw.psi_pair_on_grid([0, 0, 0], g) + 0.3 * cw.eigenfunction_p_on_grid([0, 0, 0], g)
    tr = cw.evolve(init, tau_max=12.0, dtau=2e-3)
    assert tr["outcome"] == "BlowupDetected"


def test_strichartz_closed_form():
    val = cw.strichartz_family([0, 0, 0], 5.0, 0.5, 4.0)
    closed = (4 * math.log(2.0) * 0.125 / 3.0) ** 0.25
    assert abs(val - closed) < 1e-8


def test_threshold_at_zero():
    g = cw.build_radial_grid(16)
    import numpy as np

    zero = cw.FieldState(g, np.zeros(g.nodes), np.zeros(g.nodes))
    res = cw.bisect_threshold(zero, tau_max=24.0, dtau=2e-3, tol_s=1e-8)
    assert abs(res["s_star"]) < 1e-7


def test_verify_suites_pass():
    for check in cw.run_verify_suites(7):
        assert check["pass"], check
