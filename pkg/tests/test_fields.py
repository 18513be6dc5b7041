"""Structure fields, monotone inversion, conversions and certificates"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import qcpy.fields as qcfields
from qcpy.common import EllipticityError

COORD = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
KS = st.floats(min_value=0.0, max_value=0.99)


@pytest.mark.parametrize("K, k", [(1.0, 0.0), (2.0, 1.0 / 3.0), (3.0, 0.5)])
def test_ellipticity_params(K, k):
    fromK = qcfields.EllipticityParams(K=K)
    fromk = qcfields.EllipticityParams(k=k)
    assert fromK.k == pytest.approx(k)
    assert fromk.K == pytest.approx(K)
    assert fromK.claim1Constant() == pytest.approx(K + 1.0 / K)


@pytest.mark.parametrize("kwargs", [{}, {"k": 0.2, "K": 1.5}, {"k": 1.0}, {"K": 0.5}])
def test_ellipticity_params_validation(kwargs):
    with pytest.raises(ValueError):
        qcfields.EllipticityParams(**kwargs)


@settings(max_examples=200, deadline=None)
@given(a=COORD, b=COORD, c=COORD, d=COORD, e=COORD, f=COORD, g=COORD, h=COORD, k=KS)
def test_claim1_gap_identity(a, b, c, d, e, f, g, h, k):
    xi1, xi2, a1, a2 = complex(a, b), complex(c, d), complex(e, f), complex(g, h)
    gap3, gap4 = qcfields.claim1Gaps(xi1, xi2, a1, a2, k)
    scale = 1.0 + (abs(xi1 - xi2) + abs(a1 - a2)) ** 2
    assert abs(gap3 - (1.0 - k**2) * gap4) <= 1e-9 * scale


@pytest.mark.parametrize("k", [0.1, 0.5, 0.9])
def test_claim1_conditions_agree_on_random_quadruples(k):
    rng = np.random.default_rng(11)
    n = 10**6
    xi1, xi2, a1, a2 = (rng.normal(size=n) + 1j * rng.normal(size=n) for _ in range(4))
    ok3, ok4 = qcfields.claim1_equivalence(xi1, xi2, a1, a2, k)
    gap3, gap4 = qcfields.claim1Gaps(xi1, xi2, a1, a2, k)
    decided = (np.abs(gap3) > 1e-12) & (np.abs(gap4) > 1e-12)
    assert np.sum(decided) > 0.99 * n
    np.testing.assert_array_equal(ok3[decided], ok4[decided])
    assert 0 < np.sum(ok3[decided]) < np.sum(decided)


def test_diag_field_hstar():
    conv = qcfields.a_to_hstar(qcfields.makeFieldA("diag", K=2.0))
    assert conv.hstar(0.1, 1.0) == pytest.approx(-1.0 / 3.0)
    assert conv.hstar(0.1, 1j) == pytest.approx(1j / 3.0)


def test_identity_field_has_zero_hstar():
    conv = qcfields.a_to_hstar(qcfields.makeFieldA("identity"))
    zeta = np.array([1.0, 2j, -3.0 + 0.5j])
    np.testing.assert_allclose(conv.hstar(0.0, zeta), 0.0, atol=1e-15)


def test_invert_monotone_radial_field():
    A = qcfields.makeFieldA("radial", K=3.0)
    rng = np.random.default_rng(7)
    z = rng.uniform(-0.5, 0.5, 40) + 0j
    zeta = 10.0 ** rng.uniform(-3, 1, 40) * np.exp(2j * np.pi * rng.uniform(size=40))
    xi = qcfields.invert_monotone(A, z, zeta)
    res = xi + A(z, xi) - zeta
    assert np.max(np.abs(res) / np.abs(zeta)) < 1e-12


def test_invert_monotone_rejects_non_finite_fields():
    A = qcfields.FieldA(lambda z, xi: np.nan * xi, qcfields.EllipticityParams(K=2.0))
    with pytest.raises(EllipticityError):
        qcfields.invert_monotone(A, 0.0, np.array([1.0 + 1.0j]))


def test_radial_hstar_is_k_lipschitz():
    A = qcfields.makeFieldA("radial", K=2.0)
    hstar = qcfields.a_to_hstar(A).hstar
    cert = qcfields.check_ellipticity_H(hstar, qcfields.SamplePlan(npairs=512))
    assert cert["max_lipschitz"] <= A.params.k + 1e-6
    assert cert["max_abs_H0"] <= 1e-9


@pytest.mark.parametrize("name, params", [("diag", {"K": 2.0}), ("radial", {"K": 2.0}),
                                          ("scalar", {"lam": 1.5})])
def test_h_to_b_recovers_field(name, params):
    A = qcfields.makeFieldA(name, **params)
    conv = qcfields.a_to_hstar(A)
    rng = np.random.default_rng(11)
    z = rng.uniform(-0.5, 0.5, 32) + 1j * rng.uniform(-0.5, 0.5, 32)
    xi = rng.normal(size=32) + 1j * rng.normal(size=32)
    B = qcfields.h_to_b(conv.field, z, xi, conv.G)
    np.testing.assert_allclose(B, A(z, xi), atol=1e-9)


def test_h_to_b_with_data():
    A = qcfields.makeFieldA("diag", K=2.0).withData(lambda z: 0.2 * z + 0.1j)
    conv = qcfields.a_to_hstar(A)
    z = np.array([0.1, -0.2j, 0.3 + 0.3j])
    xi = np.array([1.0, 0.5j, -0.25 + 2j])
    B = qcfields.h_to_b(conv.field, z, xi, conv.G)
    np.testing.assert_allclose(B, A(z, xi) - A.gvalues(z), atol=1e-9)


def test_zero_field_gives_laplace():
    H = qcfields.makeFieldH("zero")
    xi = np.array([1.0, 2j])
    np.testing.assert_allclose(qcfields.h_to_b(H, 0.0, xi), xi)


def test_certificate_A_for_diag_field():
    cert = qcfields.check_ellipticity_A(qcfields.makeFieldA("diag", K=2.0))
    assert cert["passed"]
    assert cert["K_star"] == pytest.approx(2.0, rel=1e-8)
    assert cert["max_abs_A0"] == 0.0


def test_certificate_A_detects_understated_constant():
    cert = qcfields.check_ellipticity_A(qcfields.makeFieldA("scalar", lam=3.0, K=2.0))
    assert not cert["passed"]
    assert cert["K_star"] == pytest.approx(3.0, rel=1e-8)


def test_certificate_H_for_power_field():
    H = qcfields.makeFieldH("power", K=2.0)
    cert = qcfields.check_ellipticity_H(H)
    assert cert["passed"]
    assert cert["max_lipschitz"] <= 1.0 / 3.0 + 1e-9


def test_certificate_H_detects_violation():
    H = qcfields.FieldH(lambda z, zeta: 0.5 * zeta, qcfields.EllipticityParams(k=1.0 / 3.0))
    cert = qcfields.check_ellipticity_H(H)
    assert not cert["passed"]
    assert cert["max_lipschitz"] == pytest.approx(0.5)


def test_certificate_H_checks_holder_data():
    H = qcfields.makeFieldH("holder-linear", k=0.4, alpha=0.5)
    cert = qcfields.check_ellipticity_H(H, qcfields.SamplePlan(npairs=1024))
    assert cert["passed"]
    assert 0 < cert["max_holder_quotient"] <= 0.2 + 1e-9


def test_hstar_holder_bands():
    A = qcfields.makeFieldA("holder-scalar", alpha=0.5, c=0.5)
    rep = qcfields.check_hstar_holder(A)
    assert rep["alpha"] == 0.5
    assert len(rep["band_maxima"]) == len(rep["bands"]) - 1
    assert math.isfinite(rep["constant"]) and rep["constant"] > 0


def test_sample_plan_needs_four_decades():
    with pytest.raises(ValueError, match="four decades"):
        qcfields.SamplePlan(scale_lo=1e-2, scale_hi=10.0)


def test_power_field_constants():
    alpha, k = qcfields.powerFieldConstants(2.0)
    assert alpha == pytest.approx(-0.2)
    assert k == pytest.approx(1.0 / 3.0)


def test_expression_fields():
    H = qcfields.makeFieldH("expr", expr="0.25*conj(zeta)", k=0.25)
    assert H(0.0, 2j) == pytest.approx(-0.5j)
    with pytest.raises(ValueError, match="Unknown symbols"):
        qcfields.makeFieldH("expr", expr="q*zeta", k=0.25)


def test_registries_reject_unknown_names():
    with pytest.raises(KeyError):
        qcfields.makeFieldH("cubic")
    with pytest.raises(KeyError):
        qcfields.makeFieldA("cubic")


def test_frozen_and_averaged_fields():
    H = qcfields.makeFieldH("holder-linear", k=0.4, alpha=0.5)
    frozen = H.frozen(0.5)
    assert frozen.autonomous
    assert frozen(0.0, 1.0) == pytest.approx(H(0.5, 1.0))
    avg = qcfields.averaged_field(H, np.array([0.0, 0.5]), np.array([1.0, 1.0]))
    assert avg(0.3, 1.0) == pytest.approx(0.5 * (H(0.0, 1.0) + H(0.5, 1.0)))
