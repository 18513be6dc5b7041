"""Contraction solvers: global Beltrami, Leray-Lions and the disc Riemann-Hilbert problem"""

import numpy as np
import pytest

import qcpy.corpus as corpus
import qcpy.fields as qcfields
import qcpy.probes as probes
import qcpy.solvers as qcsolvers
from qcpy.common import ConvergenceError
from qcpy.grid import ComplexGrid, GridField
from qcpy.transforms import DiskSpec


def _geometry(N, L=1.0):
    return ComplexGrid(np.zeros((N, N)), L)


def _manufactured(H, sol, geom):
    z = geom.points()
    jet = sol.jet(z)
    return ComplexGrid(jet["fzb"] - H(z, jet["fz"]), geom.L, sol.singular_points)


def test_zero_field_gives_identity():
    geom = _geometry(64)
    rep = qcsolvers.solve_beltrami_global(qcfields.makeFieldH("zero"), geom)
    assert rep.iterations == 1
    assert rep.residual_l2 == 0.0
    np.testing.assert_allclose(rep.solution.values, geom.points(), atol=1e-14)
    np.testing.assert_allclose(rep.arrays["f_z"].values, 1.0, atol=1e-14)


def test_linear_field_contracts_at_rate_k():
    geom = _geometry(64)
    z = geom.points()
    G = geom.withValues(0.1 * np.exp(-np.abs(z) ** 2 / 0.05))
    H = qcfields.makeFieldH("linear", k=1.0 / 3.0)
    rep = qcsolvers.solve_beltrami_global(H, G, tol=1e-10)
    assert rep.iterations > 2
    assert max(rep.contraction_ratios) <= 1.0 / 3.0 + 1e-9
    assert rep.residual_l2 <= 1e-9
    assert rep.diagnostics["normalization"] == "principal"


def test_manufactured_power_field_recovers_bump():
    geom = _geometry(128)
    sol = corpus.bump_example()
    H = qcfields.powerField(2.0)
    rep = qcsolvers.solve_beltrami_global(H, _manufactured(H, sol, geom), tol=1e-12)
    z = geom.points()
    mask = geom.probeMask()
    jet = sol.jet(z[mask])
    err = np.sqrt(np.sum(np.abs(rep.arrays["f_z"].values[mask] - jet["fz"]) ** 2
                         + np.abs(rep.arrays["f_zbar"].values[mask] - jet["fzb"]) ** 2))
    scale = np.sqrt(np.sum(np.abs(jet["fz"]) ** 2 + np.abs(jet["fzb"]) ** 2))
    assert err / scale < 1e-4
    assert rep.asymptoticRatio() <= H.params.k + 0.05


def test_dirichlet_window_solve_holds_on_probe_region():
    geom = _geometry(64)
    sol = corpus.power_example(2.0, center=-1.6)
    H = sol.field
    rep = qcsolvers.solve_beltrami_global(H, _manufactured(H, sol, geom),
                                          normalization="dirichlet-window", boundary=sol)
    assert rep.residual_l2 <= 1e-8
    assert rep.diagnostics["normalization"] == "dirichlet-window"


def test_background_jets_blend_data_outside_window():
    geom = _geometry(32)
    sol = corpus.power_example(2.0, center=-1.6)
    bj = qcsolvers.backgroundJets(geom, sol)
    z = geom.points()
    np.testing.assert_allclose(bj["f"][0, 0], sol.f(z[0, 0]), rtol=1e-12)
    np.testing.assert_allclose(bj["f"][16, 16], z[16, 16], atol=1e-14)


@pytest.mark.parametrize("kwargs", [
    {"normalization": "periodic"},
    {"normalization": "dirichlet-window"},
])
def test_global_solve_rejects_bad_normalization(kwargs):
    with pytest.raises(ValueError):
        qcsolvers.solve_beltrami_global(qcfields.makeFieldH("zero"), _geometry(16), **kwargs)


def test_leray_lions_identity_structure():
    geom = _geometry(256)
    A = qcfields.makeFieldA("identity")
    u, v, rep = qcsolvers.solve_leray_lions(A, grid=geom)
    z = geom.points()
    np.testing.assert_allclose(u.values, z.real, atol=1e-12)
    np.testing.assert_allclose(v.values, z.imag, atol=1e-12)
    res = qcsolvers.weak_residual(A, None, rep.arrays["f_z"], rep.arrays["f_zbar"])
    assert res["max_abs"] <= 1e-12
    assert len(res["residuals"]) == 20


@pytest.mark.parametrize("route", ["modified", "direct"])
def test_leray_lions_diagonal_structure(route):
    geom = _geometry(256)
    A = qcfields.makeFieldA("diag", K=2.0)
    u, v, rep = qcsolvers.solve_leray_lions(A, grid=geom, route=route)
    assert np.all(u.values.imag == 0)
    assert rep.diagnostics["route"] == route
    res = qcsolvers.weak_residual(A, None, rep.arrays["f_z"], rep.arrays["f_zbar"])
    assert res["max_abs"] <= 1e-6


def test_leray_lions_routes_agree_with_data():
    geom = _geometry(64)
    z = geom.points()
    g = geom.withValues(0.2 * np.exp(-np.abs(z - 0.1) ** 2 / 0.02) + 0j)
    A = qcfields.makeFieldA("radial", K=2.0)
    _, _, mod = qcsolvers.solve_leray_lions(A, g, route="modified")
    _, _, direct = qcsolvers.solve_leray_lions(A, g, route="direct")
    mask = geom.probeMask()
    np.testing.assert_allclose(mod.arrays["f_zbar"].values[mask],
                               direct.arrays["f_zbar"].values[mask], atol=1e-8)


def test_leray_lions_argument_checks():
    A = qcfields.makeFieldA("identity")
    with pytest.raises(ValueError):
        qcsolvers.solve_leray_lions(A)
    with pytest.raises(ValueError):
        qcsolvers.solve_leray_lions(A, grid=_geometry(16), route="sideways")
    with pytest.raises(ValueError):
        qcsolvers.solve_leray_lions(A, grid=_geometry(16), normalization="dirichlet-window")


def test_weak_residual_needs_room_for_bumps():
    geom = _geometry(64)
    one = geom.withValues(np.ones((64, 64), dtype=np.complex128))
    with pytest.raises(ValueError):
        qcsolvers.weak_residual(qcfields.makeFieldA("identity"), None, one, one)


def test_riemann_hilbert_linear_field():
    sol = corpus.power_example(2.0)
    H = qcfields.makeFieldH("linear", k=1.0 / 3.0)
    rep = qcsolvers.solve_riemann_hilbert(H, sol, DiskSpec(0.3, 0.2))
    diag = rep.diagnostics
    assert diag["isometry_relative_gap"] <= 1e-4
    assert diag["boundary_residual"] < 1e-12
    assert diag["norm_bound_constant"] <= 2.0 * H.params.K * 1.05
    assert rep.asymptoticRatio() == pytest.approx(1.0 / 3.0, abs=1e-3)
    assert set(rep.arrays) == {"F", "F_z", "F_zbar", "psi"}
    assert rep.toDict()["iterations"] == rep.iterations


def test_riemann_hilbert_rejects_expanding_field():
    sol = corpus.power_example(2.0)
    H = qcfields.FieldH(lambda z, zeta: 3.0 * zeta, qcfields.EllipticityParams(k=0.5))
    with pytest.raises(ConvergenceError):
        qcsolvers.solve_riemann_hilbert(H, sol, DiskSpec(0.3, 0.2))


def test_solve_report_asymptotic_ratio():
    rep = qcsolvers.SolveReport(4, 0.0, [0.5, 0.3, float("nan"), 0.2])
    assert rep.asymptoticRatio() == pytest.approx(0.3)
    assert qcsolvers.SolveReport(1, 0.0, []).asymptoticRatio() == 0.0


@pytest.mark.slow
def test_gradient_error_decreases_under_refinement():
    sol = corpus.bump_example()
    H = qcfields.makeFieldH("holder-linear", k=1.0 / 3.0, alpha=0.5)
    study = qcsolvers.gradient_convergence_study(H, sol, resolutions=(128, 256, 512))
    assert len(study["rows"]) == 3
    assert all(r >= 3.0 for r in study["ratios"])
    assert study["order"] > 1.5
    finest = study["finest"]
    assert finest.solution.N == 512
    est = probes.campanato_holder_estimate(GridField(finest.solution), 0j,
                                           [2.0**-3, 2.0**-4, 2.0**-5, 2.0**-6])
    assert not est.degenerate
    assert est.gamma >= min(0.5, probes.alpha_K(H.params.K)) - 0.05


def test_leray_lions_nonlinear_weak_residual():
    geom = _geometry(256)
    z = geom.points()
    g = geom.withValues(0.2 * np.exp(-np.abs(z - 0.1) ** 2 / 0.02) + 0j)
    A = qcfields.makeFieldA("radial", K=2.0)
    _, _, rep = qcsolvers.solve_leray_lions(A, g)
    res = qcsolvers.weak_residual(A, g, rep.arrays["f_z"], rep.arrays["f_zbar"])
    assert len(res["residuals"]) == 20
    assert res["max_abs"] < 1e-5


@pytest.fixture(scope="module")
def linear_solve():
    geom = _geometry(256)
    z = geom.points()
    G = geom.withValues(0.1 * np.exp(-np.abs(z) ** 2 / 0.05))
    rep = qcsolvers.solve_beltrami_global(qcfields.makeFieldH("linear", k=1.0 / 3.0), G)
    return rep, G


@pytest.mark.parametrize("q", [3.0, 4.0])
def test_caccioppoli_constant_is_stable_on_solver_output(linear_solve, q):
    rep, G = linear_solve
    centers = [0j, 0.1, -0.1, 0.1j, -0.1j]
    radii = [0.16, 0.08, 0.04, 0.02]
    res = probes.caccioppoli_stability(GridField(rep.solution), G, centers, radii, q, 2.0)
    assert len(res["rows"]) == 20
    assert res["stable"]
    assert res["spread"] <= 2.0
