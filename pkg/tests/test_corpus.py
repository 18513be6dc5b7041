"""Closed-form solutions, their jets and the corpus registry"""

import numpy as np
import pytest

import qcpy.corpus as corpus


@pytest.mark.parametrize("name", ["power", "linear-phase", "poincare-equality",
                                  "radial-quadratic", "bump"])
def test_default_jets_match_finite_differences(name):
    res = corpus.verify_jets(corpus.getSolution(name))
    assert res["passed"], res["errors"]
    assert res["npts"] == 100


def test_cusp_bump_jets_match_finite_differences():
    sol = corpus.bump_example(cusp_point=0.1 + 0.05j)
    assert sol.singular_points == (0.1 + 0.05j,)
    res = corpus.verify_jets(sol)
    assert res["passed"], res["errors"]


@pytest.mark.parametrize("phi", ["identity", "square", "exp"])
def test_linear_phase_jets(phi):
    sol = corpus.linear_phase_example(0.4, phi0=0.7, Phi=phi)
    assert corpus.verify_jets(sol)["passed"]


@pytest.mark.parametrize("sol", [
    corpus.power_example(2.0),
    corpus.power_example(3.0, center=0.1 - 0.2j),
    corpus.linear_phase_example(1.0 / 3.0, phi0=1.2),
    corpus.radial_quadratic_example(),
], ids=lambda s: s.name)
def test_solutions_satisfy_their_equation(sol):
    pts = sol.annulusPoints(200, seed=3)
    np.testing.assert_array_less(sol.equationResidual(pts), 1e-12)


def test_power_example_constants():
    sol = corpus.power_example(2.0)
    assert sol.k == pytest.approx(1.0 / 3.0)
    assert sol.K == pytest.approx(2.0)
    assert sol.gamma == pytest.approx(0.6)
    assert sol.autonomous
    assert sol.singular_points == (0j,)


def test_power_example_at_k_one_is_holomorphic():
    sol = corpus.power_example(1.0)
    assert sol.k == pytest.approx(0.0)
    assert sol.gamma == pytest.approx(1.0)
    assert sol.singular_points == ()
    z = np.array([0.3 + 0.2j, -0.5j])
    np.testing.assert_allclose(sol.f(z), z**2, atol=1e-15)
    np.testing.assert_allclose(sol.jet(z)["fzb"], 0.0, atol=1e-15)


def test_power_example_rejects_small_K():
    with pytest.raises(ValueError):
        corpus.power_example(0.5)


def test_poincare_equality_has_no_field():
    sol = corpus.poincare_equality_example()
    assert sol.nonqr_derivative
    assert sol.k is None
    assert not sol.autonomous
    with pytest.raises(ValueError):
        sol.equationResidual(np.array([0.1j]))


def test_radial_quadratic_coefficient():
    sol = corpus.radial_quadratic_example(k=1.0 / 3.0, rho=0.5)
    assert sol.params["c"] == pytest.approx(0.5)
    assert sol.annulus == (0.0, 0.5)
    assert not sol.autonomous


def test_annulus_points_stay_in_annulus():
    sol = corpus.radial_quadratic_example()
    pts = sol.annulusPoints(500, seed=1)
    assert pts.shape == (500,)
    assert np.all(np.abs(pts) <= 0.5 + 1e-12)
    assert np.all(np.abs(pts) >= 0.5e-3 - 1e-15)


def test_sample_grid_is_windowed():
    sol = corpus.bump_example()
    grid = sol.sampleGrid(1.0, 32)
    raw = sol.sampleGrid(1.0, 32, window=False)
    assert grid.N == 32
    assert np.all(np.abs(grid.values[0, :]) < 1e-12)
    np.testing.assert_allclose(raw.values[16, 16], sol.f(0j), atol=1e-15)


def test_disc_jets_weights_cover_the_disc():
    sol = corpus.power_example(2.0)
    wts, jet, pts = sol.discJets(0.2j, 0.1)
    assert np.sum(wts) == pytest.approx(np.pi * 0.01, rel=1e-10)
    assert jet["fz"].shape == pts.shape


def test_describe_is_json_friendly():
    desc = corpus.power_example(2.0, center=0.1j).describe()
    assert desc["name"] == "power"
    assert desc["params"]["center"] == [0.0, 0.1]
    assert desc["annulus"] == [0.0, "inf"]


def test_get_solution_overrides_defaults():
    sol = corpus.getSolution("power", K=3.0)
    assert sol.K == pytest.approx(3.0)


def test_get_solution_rejects_unknown_names():
    with pytest.raises(KeyError):
        corpus.getSolution("cubic")
    with pytest.raises(KeyError):
        corpus.getSolution("power", alpha=0.3)


def test_list_corpus():
    entries = corpus.listCorpus()
    assert [e["name"] for e in entries] == ["power", "linear-phase", "poincare-equality",
                                            "radial-quadratic", "bump"]
    assert entries[0]["defaults"]["center"] == [0.0, 0.0]
