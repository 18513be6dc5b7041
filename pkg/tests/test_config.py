"""Run configuration files, validation and merging"""

import json

import pytest

import qcpy.config as qcconfig
from qcpy.common import ConfigError


def _write(tmp_path, text):
    filenm = tmp_path / "run.json"
    filenm.write_text(text)
    return str(filenm)


def test_defaults_without_sources():
    cfg = qcconfig.RunConfig.fromSources("probe-suite")
    assert cfg["command"] == "probe-suite"
    assert cfg["grid_n"] == 256
    assert cfg.ellipticity() == (None, None)


def test_file_values_and_overrides(tmp_path):
    filenm = _write(tmp_path, json.dumps({"grid_n": 128, "tol": 1e-8, "corpus": "power"}))
    cfg = qcconfig.RunConfig.fromSources("probe-suite", filenm, {"grid_n": 64, "tol": None})
    assert cfg["grid_n"] == 64
    assert cfg["tol"] == 1e-8
    assert cfg["corpus"] == "power"


def test_unknown_key_reports_line(tmp_path):
    filenm = _write(tmp_path, '{\n  "grid_n": 128,\n  "gird_l": 1.0\n}\n')
    with pytest.raises(ConfigError, match=r":3: unknown key 'gird_l'"):
        qcconfig.loadConfig(filenm)


def test_syntax_error_reports_line(tmp_path):
    filenm = _write(tmp_path, '{\n  "grid_n": 128,\n  "tol" 1e-8\n}\n')
    with pytest.raises(ConfigError, match=r":3: invalid JSON"):
        qcconfig.loadConfig(filenm)


def test_bad_value_reports_line(tmp_path):
    filenm = _write(tmp_path, '{\n  "grid_n": 100\n}\n')
    with pytest.raises(ConfigError, match=r":2: key 'grid_n'"):
        qcconfig.loadConfig(filenm)


def test_missing_file():
    with pytest.raises(ConfigError, match="not found"):
        qcconfig.loadConfig("/nonexistent/run.json")


def test_non_object_config(tmp_path):
    with pytest.raises(ConfigError, match="JSON object"):
        qcconfig.loadConfig(_write(tmp_path, "[1, 2]"))


def test_command_mismatch(tmp_path):
    filenm = _write(tmp_path, json.dumps({"command": "solve-rh"}))
    with pytest.raises(ConfigError, match="differs"):
        qcconfig.RunConfig.fromSources("probe-suite", filenm)


@pytest.mark.parametrize("overrides", [
    {"k": 1.0},
    {"K": 0.5},
    {"inner": 1.2},
    {"normalization": "neumann"},
    {"route": "sideways"},
    {"snapshot_format": "png"},
    {"q": [2.0, 3.0]},
    {"workers": -1},
    {"center": [0.0]},
    {"k": 0.5, "K": 2.0},
])
def test_validation_errors(overrides):
    with pytest.raises(ConfigError):
        qcconfig.RunConfig.fromSources("probe-suite", None, overrides)


def test_ellipticity_flag_replaces_file_value(tmp_path):
    filenm = _write(tmp_path, json.dumps({"k": 0.5}))
    cfg = qcconfig.RunConfig.fromSources("solve-rh", filenm, {"K": 2.0})
    assert "k" not in cfg or cfg["k"] is None
    k, K = cfg.ellipticity()
    assert k == pytest.approx(1.0 / 3.0)
    assert K == 2.0


def test_consistent_k_and_K_are_accepted():
    cfg = qcconfig.RunConfig.fromSources("solve-rh", None, {"k": 1.0 / 3.0, "K": 2.0})
    assert cfg.ellipticity()[1] == pytest.approx(2.0)


def test_probe_radii():
    cfg = qcconfig.RunConfig.fromSources("probe-morrey")
    radii = cfg.probeRadii()
    assert len(radii) == 7
    assert radii[0] == 0.25
    explicit = qcconfig.RunConfig.fromSources("probe-morrey", None,
                                              {"radii": "0.1,0.2,0.05", "grid_l": 2.0})
    assert explicit.probeRadii() == [0.4, 0.2, 0.1]


def test_complex_value_and_sorted_dict():
    cfg = qcconfig.RunConfig.fromSources("solve-rh", None, {"disk_center": [0.1, -0.2]})
    assert cfg.complexValue("disk_center") == complex(0.1, -0.2)
    keys = list(cfg.toDict())
    assert keys == sorted(keys)


def test_merge_skips_none():
    merged = qcconfig.mergeConfig({"a": 1, "b": 2}, {"a": 3}, {"b": None})
    assert merged == {"a": 3, "b": 2}


def test_parse_params():
    params = qcconfig.parseParams(["K=2", "center=0.3+0.1j", "Phi=exp", "alpha=2^-1"])
    assert params == {"K": 2.0, "center": 0.3 + 0.1j, "Phi": "exp", "alpha": 0.5}
    with pytest.raises(ConfigError):
        qcconfig.parseParams(["K"])
