"""Number and range parsing"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcpy.ranges import dyadicRadii, fitWindow, logSpaced, parseNumber, parseRange


@pytest.mark.parametrize("txt, expected", [("0.5", 0.5), ("2^-8", 2.0**-8), (" 3^2 ", 9.0)])
def test_parse_number(txt, expected):
    assert parseNumber(txt) == pytest.approx(expected)


def test_parse_range_forms():
    np.testing.assert_allclose(parseRange("1.1,2,5"), [1.1, 2.0, 5.0])
    np.testing.assert_allclose(parseRange("0.25"), [0.25])
    np.testing.assert_allclose(parseRange("1:100:3"), [1.0, 10.0, 100.0])
    np.testing.assert_allclose(parseRange("2^-8:2^-2"), 2.0 ** -np.arange(2, 9))
    assert len(parseRange("1:100", default_count=50)) == 50


def test_dyadic_radii_defaults():
    radii = dyadicRadii(2.0**-8, 2.0**-2)
    assert len(radii) == 7
    assert radii[0] == 0.25
    assert radii[-1] == pytest.approx(2.0**-8)
    assert np.all(np.diff(radii) < 0)


@given(rmax=st.floats(min_value=1e-3, max_value=10.0),
       octaves=st.floats(min_value=0.5, max_value=12.0),
       per_octave=st.integers(min_value=1, max_value=4))
@settings(deadline=None)
def test_dyadic_radii_stay_in_range(rmax, octaves, per_octave):
    rmin = rmax * 2.0**-octaves
    radii = dyadicRadii(rmin, rmax, per_octave)
    assert radii[0] == rmax
    assert radii[-1] >= rmin * (1 - 1e-9)
    np.testing.assert_allclose(radii[:-1] / radii[1:], 2.0 ** (1.0 / per_octave))


def test_dyadic_radii_rejects_bad_range():
    with pytest.raises(ValueError):
        dyadicRadii(0.5, 0.25)
    with pytest.raises(ValueError):
        dyadicRadii(0.0, 0.25)


def test_log_spaced_endpoints():
    vals = logSpaced(1.01, 100.0, 50)
    assert vals[0] == pytest.approx(1.01)
    assert vals[-1] == pytest.approx(100.0)
    np.testing.assert_array_equal(logSpaced(2.0, 4.0, 1), [2.0])


@pytest.mark.parametrize("nvals, expected", [(7, slice(1, 6)), (10, slice(2, 8)),
                                             (3, slice(0, 3)), (2, slice(0, 2))])
def test_fit_window(nvals, expected):
    assert fitWindow(nvals) == expected
