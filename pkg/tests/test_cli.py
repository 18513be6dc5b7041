"""Command line runs: exit status, run.json and written files"""

import json
import os

import pytest

import qcpy.common as qccommon
import qcpy.hdf5 as qchdf
from qcpy.cli import main


def _run(tmp_path, *argv):
    out = str(tmp_path / "out")
    status = main(list(argv) + ["--out", out])
    return status, out


def _report(out):
    with open(os.path.join(out, "run.json")) as fp:
        return json.load(fp)


def test_corpus_list(tmp_path):
    status, out = _run(tmp_path, "corpus-list")
    assert status == 0
    report = _report(out)
    assert report["command"] == "corpus-list"
    assert len(report["results"]["corpus"]) == 5
    assert report["summary"]["passed"]
    assert set(report) == {"qcpy_version", "command", "config", "summary", "records",
                           "results", "runtime"}


def test_alpha_table(tmp_path):
    status, out = _run(tmp_path, "probe-alpha-table")
    assert status == 0
    with open(os.path.join(out, "alpha_table.csv")) as fp:
        lines = fp.read().splitlines()
    assert lines[0] == "K,inv_K,alpha_K,upper"
    assert len(lines) == 51


def test_bad_config_file(tmp_path):
    cfgfile = tmp_path / "bad.json"
    cfgfile.write_text('{"grid_n": 100}')
    status, _ = _run(tmp_path, "corpus-list", "--config", str(cfgfile))
    assert status == 2


def test_bad_flag_value(tmp_path):
    status, _ = _run(tmp_path, "solve-beltrami", "--grid-n", "100")
    assert status == 2


def test_unknown_corpus_entry(tmp_path):
    status, _ = _run(tmp_path, "probe-suite", "--corpus", "cubic")
    assert status == 2


def test_missing_subcommand():
    with pytest.raises(SystemExit):
        main([])


def test_probe_suite_on_power_example(tmp_path):
    status, out = _run(tmp_path, "probe-suite", "--corpus", "power", "--K", "2")
    assert status == 0
    report = _report(out)
    assert report["summary"]["passed"]
    assert report["summary"]["failed"] == []
    assert report["config"]["K"] == 2.0
    for name in ("morrey.csv", "campanato.csv", "gradient_decay.csv"):
        assert os.path.isfile(os.path.join(out, name))


def test_convert_field(tmp_path):
    status, out = _run(tmp_path, "convert-field", "--field", "diag", "--K", "2")
    assert status == 0
    probes = [r["probe"] for r in _report(out)["records"]]
    assert probes == ["certificate_A", "certificate_Hstar", "round_trip"]


def test_solve_beltrami_writes_solution(tmp_path):
    status, out = _run(tmp_path, "solve-beltrami", "--field", "linear", "--k", "0.3",
                       "--grid-n", "64")
    assert status == 0
    grid = qchdf.readGrid(os.path.join(out, "solution.h5"), "f")
    assert grid.N == 64
    assert qchdf.readGrid(os.path.join(out, "solution.h5"), "G").N == 64
    assert os.path.isfile(os.path.join(out, "contraction.csv"))
    report = _report(out)
    assert {r["probe"] for r in report["records"]} == {"solve_residual", "contraction"}


def test_processing_log_file(tmp_path):
    logfile = tmp_path / "proc.log"
    try:
        status, _ = _run(tmp_path, "probe-alpha-table", "--log", str(logfile))
    finally:
        qccommon.set_log_file("<stdout>", qccommon.get_log_logger())
    assert status == 0
    assert "Probe alpha_K" in logfile.read_text()
