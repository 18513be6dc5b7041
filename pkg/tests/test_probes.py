"""Inequality probes on closed-form solutions"""

import json

import numpy as np
import pytest

import qcpy.corpus as corpus
import qcpy.probes as probes
from qcpy.grid import Jet2, spectrumFromSamples


k_power = 1.0 / 3.0


@pytest.fixture(scope="module")
def power2():
    return corpus.power_example(2.0)


@pytest.mark.parametrize("K, expected", [(1.0, 1.0), (5.0 / 3.0, 2.0 / 3.0), (3.0, 0.4)])
def test_alpha_K_values(K, expected):
    assert probes.alpha_K(K) == pytest.approx(expected, abs=1e-14)


def test_alpha_K_rejects_small_K():
    with pytest.raises(ValueError):
        probes.alpha_K(0.5)


def test_alpha_K_matches_k_form():
    for K in (1.2, 2.0, 7.5, 40.0):
        k = (K - 1.0) / (K + 1.0)
        assert probes.alpha_K(K) == pytest.approx(probes.alphaKForm(k), abs=1e-12)


def test_alpha_table_ordering():
    rec = probes.alpha_table()
    assert rec["passed"]
    assert len(rec["rows"]) == 50
    assert rec["value"] > 0
    assert all(row["ordered"] for row in rec["rows"])
    json.dumps(rec)


def test_probe_record_report_never_fails():
    rec = probes.ProbeRecord("mu_constant", {"k": 0.2}, 1.5, passed=False, kind="report")
    assert rec["passed"]
    assert probes.failed([rec]) == []
    bad = probes.ProbeRecord("directional", {"k": 0.2}, 1.5, 0.0, passed=False)
    assert probes.failed([rec, bad]) == [bad]
    assert bad["anchor"] == probes.ANCHORS["directional"]


def test_jsonable_converts_numpy_values():
    val = probes.jsonable({"a": np.float64(0.5), "b": np.array([1 + 2j]), "c": np.bool_(True)})
    assert val == {"a": 0.5, "b": [[1.0, 2.0]], "c": True}


def test_power_mu_nu_is_extremal_in_first_bound(power2):
    pts = power2.annulusPoints(200, seed=5)
    pair = probes.muNu(power2.jet(pts))
    np.testing.assert_allclose(np.abs(pair.mu), 0.25, rtol=1e-12)
    s1, s2 = probes.mu_nu_check(pair, k_power)
    assert s1 == pytest.approx(0.0, abs=1e-12)
    assert s2 == pytest.approx(1.0 / 24.0, abs=1e-12)


def test_linear_phase_mu_nu_is_sharp():
    sol = corpus.linear_phase_example(k_power, phi0=0.4)
    pair = probes.muNu(sol.jet(sol.annulusPoints(50)))
    s1, s2 = probes.mu_nu_check(pair, k_power)
    assert s1 == pytest.approx(0.0, abs=1e-12)
    assert s2 == pytest.approx(0.0, abs=1e-12)


def test_mu_nu_degenerate_scalar_jet():
    jet = Jet2(1.0, 0.0, 0.0, 0.5, 0.1)
    with pytest.raises(ValueError):
        probes.muNu(jet)


def test_mu_nu_check_rejects_k_out_of_range():
    pair = probes.MuNuPair(np.array([0.1]), np.array([0.0]))
    with pytest.raises(ValueError):
        probes.mu_nu_check(pair, 1.0)


def test_directional_and_distortion_checks(power2):
    jet = power2.jet(power2.annulusPoints(300, seed=2))
    assert probes.directional_qr_check(jet, k_power) <= 1e-12
    assert probes.derivative_distortion_check(jet, k_power) <= 1e-12
    with pytest.raises(ValueError):
        probes.directional_qr_check(jet, k_power, n_theta=32)


def test_distortion_fails_for_poincare_equality():
    sol = corpus.poincare_equality_example()
    jet = sol.jet(sol.annulusPoints(50))
    assert probes.derivative_distortion_check(jet, k_power) > 0.1


def test_density_identity_holds_for_any_jet(rng):
    vals = [rng.normal(size=40) + 1j * rng.normal(size=40) for _ in range(5)]
    dens = probes.densities(Jet2(*vals), 0.3)
    assert dens.identity_residual < 1e-13
    assert dens.I is None


def test_pointwise_bound(power2):
    pts = power2.annulusPoints(300, seed=4)
    assert probes.pointwise_bound_check(power2.jet(pts), pts, k_power) >= -1e-9


def test_circle_check_is_equality_for_z2zbar():
    sol = corpus.poincare_equality_example()
    spec = probes.circleSpectrum(sol, 0j, 0.25, 16)
    chk = probes.poincare_circle_check(spec, k_power)
    assert chk["lhs"] == pytest.approx(2 * 0.25**4, rel=1e-10)
    assert chk["slack"] == pytest.approx(0.0, abs=1e-14)
    assert chk["constraint_residual"] < 1e-14


def test_circle_check_holds_for_power(power2):
    spec = probes.circleSpectrum(power2, 0j, 0.1, 16)
    chk = probes.poincare_circle_check(spec, k_power)
    assert chk["slack"] >= -1e-12 * chk["scale"]


def test_circle_check_names_the_failing_series():
    phi = 2 * np.pi * np.arange(16) / 16
    spec = spectrumFromSamples(0j, 0.1, np.ones(16), np.exp(5j * phi), 2)
    with pytest.raises(ValueError, match="f_zbar"):
        probes.poincare_circle_check(spec, k_power)


def test_morrey_profile_exponent(power2):
    radii = probes.defaultRadii()
    prof = probes.morrey_profile(power2, 0j, radii, k_power)
    assert prof.passed
    assert not prof.degenerate
    assert prof.fitted_exponent == pytest.approx(1.2, abs=0.01)
    assert all(s >= 0 for s in prof.ratio_slacks)
    assert len(prof.rows()) == len(radii)


def test_morrey_profile_degenerate_for_affine_map():
    sol = corpus.linear_phase_example(0.2, Phi="identity")
    prof = probes.morrey_profile(sol, 0j, probes.defaultRadii(), 0.2)
    assert prof.degenerate


def test_morrey_profile_needs_four_radii(power2):
    with pytest.raises(ValueError):
        probes.morrey_profile(power2, 0j, [0.1, 0.05, 0.025], k_power)


def test_campanato_recovers_power_exponent(power2):
    est = probes.campanato_holder_estimate(power2, 0j, probes.defaultRadii())
    assert not est.degenerate
    assert not est.flagged
    assert est.gamma == pytest.approx(power2.gamma, abs=0.01)


def test_campanato_degenerate_for_constant_derivative():
    sol = corpus.linear_phase_example(0.2, Phi="identity")
    est = probes.campanato_holder_estimate(sol, 0j, probes.defaultRadii())
    assert est.degenerate
    assert est.gamma is None


def test_gradient_decay_of_bounded_gradient():
    sol = corpus.bump_example()
    decay = probes.gradient_decay_profile(sol, 0.05j, probes.defaultRadii())
    assert decay["exponent"] == pytest.approx(1.0, abs=0.02)


def test_increment_check_for_autonomous_solution(power2):
    assert probes.increment_qr_check(power2, 0.1, k_power) <= 1e-12


def test_increment_check_for_radial_quadratic():
    sol = corpus.radial_quadratic_example(k=k_power, rho=0.5)
    assert probes.increment_qr_check(sol, 0.1, k_power) == pytest.approx(1.0 / 30.0, rel=1e-9)


def test_increment_check_rejects_large_shift():
    sol = corpus.radial_quadratic_example(rho=0.5)
    with pytest.raises(ValueError):
        probes.increment_qr_check(sol, 0.6, k_power)


def test_mu_constant_diagnostic():
    sol = corpus.linear_phase_example(k_power, phi0=0.3)
    pair = probes.muNu(sol.jet(sol.annulusPoints(50)))
    rec = probes.mu_constant_diagnostic(pair.mu, pair.nu, k_power)
    assert rec["status"] == "evaluated"
    assert rec["value"]["sup_nu_minus_mu2"] < 1e-14
    assert rec["value"]["mu_oscillation"] < 1e-14


def test_mu_constant_not_applicable_away_from_extremal(power2):
    pair = probes.muNu(power2.jet(power2.annulusPoints(50)))
    rec = probes.mu_constant_diagnostic(pair.mu, pair.nu, k_power)
    assert rec["status"] == "not-applicable"
    assert rec["value"] is None


def test_caccioppoli_ratio_is_scale_invariant_for_affine_maps():
    sol = corpus.linear_phase_example(0.3, phi0=0.5, Phi="identity")
    res = probes.caccioppoli_stability(sol, None, [0j, 0.2 + 0.1j], [0.1, 0.05, 0.025], 3.0, 2.0)
    assert len(res["rows"]) == 6
    assert res["spread"] == pytest.approx(1.0, abs=1e-9)
    assert res["stable"]


def test_caccioppoli_check_terms(power2):
    res = probes.caccioppoli_check(power2, lambda z: 0.5 + 0 * z, 0.1, 0.05, 4.0, 2.0)
    assert res["lhs"] > 0
    assert res["g_term"] == pytest.approx(0.5 * (np.pi * 0.01) ** 0.25, rel=1e-9)
    assert 0 < res["ratio"] < np.inf


def test_caccioppoli_rejects_q_two(power2):
    with pytest.raises(ValueError):
        probes.caccioppoli_check(power2, None, 0j, 0.1, 2.0, 2.0)


def test_power_suite_passes(power2):
    records = probes.probe_suite(power2, k_power)
    assert probes.failed(records) == []
    names = {r["probe"] for r in records}
    assert {"directional", "mu_nu", "densities", "pointwise", "poincare_circle",
            "morrey_ratio", "campanato", "exponent_recovery", "gradient_decay",
            "increment", "mu_constant"} <= names
    json.dumps(records)


def test_poincare_equality_suite_skips_autonomous_probes():
    sol = corpus.poincare_equality_example()
    records = probes.probe_suite(sol, k_power)
    names = [r["probe"] for r in records]
    assert "skipped" in names
    assert "morrey_ratio" not in names
    assert probes.failed(records) == []
