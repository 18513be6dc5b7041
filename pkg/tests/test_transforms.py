"""Global and local Cauchy and Beurling transforms"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import qcpy.grid as qcgrid
import qcpy.transforms as qctrans


def _gaussian_grid(N=128, width=0.1, center=0.1 - 0.05j):
    return qcgrid.ComplexGrid.fromFunction(
        lambda z: np.exp(-np.abs(z - center) ** 2 / width**2) * (1 + 0.5j * z), 1.0, N)


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1),
       logn=st.integers(min_value=3, max_value=6))
def test_global_beurling_is_isometric_on_mean_zero_grids(seed, logn):
    N = 2**logn
    rng = np.random.default_rng(seed)
    vals = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
    psi = qcgrid.ComplexGrid(vals - np.mean(vals), 1.0)
    out = qctrans.beurling_global(psi)
    assert out.l2Norm() == pytest.approx(psi.l2Norm(), rel=1e-12)


def test_global_cauchy_inverts_dzbar():
    psi = _gaussian_grid()
    cpsi = qctrans.cauchy_global(psi)
    _, dzb = qcgrid.wirtinger(cpsi)
    np.testing.assert_allclose(dzb.values, psi.values - np.mean(psi.values), atol=1e-10)


def test_global_cauchy_with_mean_keeps_constant_part():
    psi = _gaussian_grid()
    with_mean = qctrans.cauchy_global(psi, with_mean=True)
    plain = qctrans.cauchy_global(psi)
    diff = with_mean.values - plain.values
    np.testing.assert_allclose(diff, np.mean(psi.values) * np.conj(psi.points()), atol=1e-14)


def test_global_beurling_is_dz_of_cauchy():
    psi = _gaussian_grid()
    dz, _ = qcgrid.wirtinger(qctrans.cauchy_global(psi))
    np.testing.assert_allclose(qctrans.beurling_global(psi).values, dz.values, atol=1e-10)


@pytest.fixture(scope="module")
def diskgrid():
    return qctrans.DiskGrid(qctrans.DiskSpec(0.3 + 0.1j, 0.2), nr=16, ntheta=16)


def test_disk_cauchy_of_constant(diskgrid):
    u = diskgrid.points - diskgrid.disk.center
    out = diskgrid.cauchy(np.ones_like(u))
    np.testing.assert_allclose(out, np.conj(u) - u, atol=1e-12)


def test_disk_beurling_of_constant_and_conjugate(diskgrid):
    u = diskgrid.points - diskgrid.disk.center
    np.testing.assert_allclose(diskgrid.beurling(np.ones_like(u)), -1.0, atol=1e-12)
    np.testing.assert_allclose(diskgrid.beurling(np.conj(u)), -u, atol=1e-12)


def test_disk_boundary_values_are_imaginary(diskgrid, rng):
    vals = rng.normal(size=diskgrid.points.shape) * (1 + 0.3j)
    u = diskgrid.points - diskgrid.disk.center
    smooth = vals[0, 0] + vals[1, 1] * u + vals[2, 2] * np.conj(u) ** 2
    bnd = diskgrid.boundaryCauchy(smooth)
    assert np.max(np.abs(bnd.real)) < 1e-12


def test_disk_norm_and_mean(diskgrid):
    ones = np.ones(diskgrid.points.shape)
    R = diskgrid.disk.radius
    assert diskgrid.norm(ones) == pytest.approx(np.sqrt(np.pi) * R, rel=1e-12)
    assert diskgrid.mean(3.0 * ones) == pytest.approx(3.0)


def test_local_isometry_ratio_for_polynomials():
    disk = qctrans.DiskSpec(-0.1, 0.15)
    assert qctrans.localIsometryRatio(lambda z: np.ones_like(z), disk) == pytest.approx(1.0, abs=1e-10)
    ratio = qctrans.localIsometryRatio(lambda z: np.conj(z + 0.1), disk)
    assert ratio == pytest.approx(1.0, abs=1e-10)


def test_disk_spec_validation():
    with pytest.raises(ValueError):
        qctrans.DiskSpec(0.0, 0.0)
    grid = qcgrid.ComplexGrid(np.zeros((16, 16)), 1.0)
    with pytest.raises(ValueError, match="probe region"):
        qctrans.DiskSpec(0.4, 0.2).checkInside(grid)
    assert qctrans.DiskSpec(0.2j, 0.1).toDict() == {"center": [0.0, 0.2], "radius": 0.1}


def test_local_transform_method_must_be_known():
    psi = _gaussian_grid(N=64)
    with pytest.raises(ValueError, match="method"):
        qctrans.cauchy_local(psi, qctrans.DiskSpec(0.0, 0.2), method="fmm")


@pytest.mark.parametrize("beurling", [False, True])
def test_direct_local_transform_of_constant(beurling):
    psi = qcgrid.ComplexGrid(np.ones((64, 64), dtype=np.complex128), 1.0)
    disk = qctrans.DiskSpec(0.1 - 0.05j, 0.2)
    transform = qctrans.beurling_local if beurling else qctrans.cauchy_local
    out = transform(psi, disk, method="direct")
    u = psi.points() - disk.center
    inner = np.abs(u) <= 0.5 * disk.radius
    exact = -np.ones_like(u) if beurling else np.conj(u) - u
    np.testing.assert_allclose(out.values[inner], exact[inner], atol=3e-2)
    assert np.all(out.values[~disk.contains(psi.points())] == 0)
