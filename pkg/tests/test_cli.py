import json
import subprocess
import sys

import pytest

from fanocheck.cli import main
from fanocheck.inputs import InputError, load_input


def run_cli(args, capsys):
    status = main(args)
    out = capsys.readouterr().out
    return status, (json.loads(out) if out.strip().startswith("{") else out)


def test_bounds_theorem_value(capsys):
    status, rep = run_cli(["bounds", "--M", "10", "--family", "hypersurface"], capsys)
    assert status == 0
    assert rep["results"]["entries"]["family_codim_bound"] == 1


def test_chain_bound_value(capsys):
    status, rep = run_cli(["chain", "--M", "10", "--variant", "i"], capsys)
    assert status == 0
    assert rep["results"]["bound"] == "2/5"


def test_fibre_threshold_mode(capsys):
    status, rep = run_cli(["fibre", "--family", "double", "--M", "5", "--m", "2"], capsys)
    assert status == 0
    assert rep["results"]["threshold"]["threshold"] == 3


def test_fibre_failing_value_exits_2(capsys):
    status, rep = run_cli(
        ["fibre", "--family", "hypersurface", "--M", "10", "--m", "2", "--l", "3"], capsys)
    assert status == 2
    assert rep["results"]["value"]["value"] == -3


def test_exclude_all_exit_zero(capsys):
    status, rep = run_cli(["exclude", "--case", "all", "--M", "10", "--M-max", "12"], capsys)
    assert status == 0
    assert rep["results"]["all_infeasible"] is True


def test_usage_error_exit_one(capsys):
    assert main(["bounds", "--M", "10"]) == 1  # missing --family
    assert main(["bounds", "--M", "3", "--family", "hypersurface"]) == 1  # domain


def _write_input(tmp_path, obj):
    path = tmp_path / "input.json"
    path.write_text(json.dumps(obj))
    return str(path)


def _quartic_with_point():
    # z1^4 + z2^4 - 2 z0^4 vanishes at [1:1:1:0:0]; M = 4 hypersurface
    return {
        "field": {"kind": "prime", "p": 101},
        "nvars": 5,
        "terms": [
            {"e": [4, 0, 0, 0, 0], "c": -2},
            {"e": [0, 4, 0, 0, 0], "c": 1},
            {"e": [0, 0, 4, 0, 0], "c": 1},
            {"e": [0, 0, 0, 4, 0], "c": 3},
            {"e": [0, 0, 0, 0, 4], "c": 5},
            {"e": [1, 1, 1, 1, 0], "c": 7},
        ],
        "points": [[1, 1, 1, 0, 0]],
        "chart": 0,
    }


def test_check_runs_battery(tmp_path, capsys):
    obj = _quartic_with_point()
    # adjust so the listed point lies on the hypersurface: -2+1+1+0+0+0 = 0
    path = _write_input(tmp_path, obj)
    status, rep = run_cli(
        ["check", "--input", path, "--seed", "3", "--samples", "4",
         "--thresholds", "R1.2=3,R2.2=3"], capsys)
    assert status in (0, 2)
    conditions = {r["condition"] for r in rep["results"][0]["reports"]}
    assert conditions == {"R1.1", "R1.2", "R1.3"}  # the point is non-singular


def test_check_planted_W2_failure_exits_2(tmp_path, capsys):
    # double family branch of degree 8 with a rank-2 quadratic point at
    # [1:0:0:0:0]
    obj = {
        "field": {"kind": "prime", "p": 101},
        "nvars": 5,
        "terms": [
            {"e": [6, 1, 1, 0, 0], "c": 1},
            {"e": [0, 0, 0, 4, 4], "c": 1},
        ],
        "points": [[1, 0, 0, 0, 0]],
        "chart": 0,
        "family": "double",
    }
    path = _write_input(tmp_path, obj)
    status, rep = run_cli(["check", "--input", path], capsys)
    assert status == 2
    rep0 = rep["results"][0]
    assert rep0["point_kind"] == "singular"
    assert rep0["reports"][0]["condition"] == "W2"
    assert rep0["reports"][0]["verdict"] == "fail"
    assert rep0["reports"][0]["witness"]["rank"] == 2


def test_input_validation_errors(tmp_path):
    bad = {
        "field": {"kind": "prime", "p": 101},
        "nvars": 5,
        "terms": [{"e": [4, 0, 0, 0], "c": 1}],  # wrong exponent length
    }
    with pytest.raises(InputError, match="term 0"):
        load_input(_write_input(tmp_path, bad))
    with pytest.raises(InputError, match="degree"):
        load_input(_write_input(tmp_path, {
            "field": {"kind": "prime", "p": 101}, "nvars": 5,
            "terms": [{"e": [1, 0, 0, 0, 0], "c": 1}],
        }))
    with pytest.raises(InputError, match="infinity"):
        data = load_input(_write_input(tmp_path, _quartic_with_point()))
        data.affine_point((0, 1, 0, 0, 0))


def test_rational_coefficient_parsing(tmp_path):
    obj = _quartic_with_point()
    obj["terms"][0]["c"] = "-2/1"
    obj["terms"][1]["c"] = "1/1"
    data = load_input(_write_input(tmp_path, obj))
    assert data.polynomial.evaluate([1, 1, 1, 0, 0]) == 0
    # "1/3" over a prime field is the exact modular inverse
    obj2 = _quartic_with_point()
    obj2["terms"][5]["c"] = "1/3"
    data2 = load_input(_write_input(tmp_path, obj2))
    c = data2.polynomial.terms[(1, 1, 1, 1, 0)]
    assert (c * 3) % 101 == 1


def test_cli_exit_one_on_missing_file(capsys):
    assert main(["check", "--input", "/nonexistent/file.json"]) == 1


def test_report_determinism_bytes(tmp_path):
    # identical runs produce byte-identical reports
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    for out in (out1, out2):
        code = main(["survey", "--family", "double", "--M", "5", "--field", "p:7",
                     "--samples", "500", "--seed", "11", "--conditions", "W2",
                     "--thresholds", "W2=3", "--out", str(out)])
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fanocheck.cli", "chain", "--M", "9", "--variant", "ii"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["bound"] == "1/3"


def test_text_rendering(capsys):
    status = main(["bounds", "--M", "10", "--family", "double", "--text"])
    out = capsys.readouterr().out
    assert status == 0
    assert "family_codim_bound" in out
