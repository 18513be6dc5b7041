"""Messages, timing and process information"""

import qcpy.common as qccommon


def test_merge_args_skips_none():
    assert qccommon.mergeArgs("Grid size:", 256) == "Grid size: 256"
    assert qccommon.mergeArgs("a", None, "b", 0.5) == "a b 0.5"


def test_convergence_error_keeps_trace():
    err = qccommon.ConvergenceError("no convergence", (0.5, 0.9))
    assert err.trace == [0.5, 0.9]
    assert isinstance(err, RuntimeError)
    assert qccommon.ConvergenceError("stalled").trace == []


def test_error_hierarchy():
    assert issubclass(qccommon.EllipticityError, ValueError)
    assert issubclass(qccommon.ConfigError, ValueError)


def test_elapsed_is_readable():
    assert "second" in qccommon.sElapsed(2.5)


def test_process_info():
    info = qccommon.processInfo()
    assert info["rss_mb"] > 0
    assert info["cpu_count"] >= 1
    assert set(info["cpu_times"]) == {"user", "system"}


def test_time_stamp_format():
    stamp = qccommon.sTimeUnitString()
    assert "," in stamp
    assert len(qccommon.sTimeUnitString(ismilli=True)) > len(stamp)
