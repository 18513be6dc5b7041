"""Shared fixtures of the qcpy test suite"""

import numpy as np
import pytest

import qcpy.grid as qcgrid


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: N = 512 runs, deselect with -m 'not slow'")


@pytest.fixture(scope="session")
def cubic_grid():
    """Windowed z^2 zbar on [-1,1]^2 at N = 256"""
    grid = qcgrid.ComplexGrid.fromFunction(lambda z: z**2 * np.conj(z), 1.0, 256)
    return grid.windowed()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
