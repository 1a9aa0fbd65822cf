from __future__ import annotations

import json
import subprocess
import sys

import pytest

from obcalc.cli import EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main, parse_m_range
from obcalc.contact import figure3_diagram, load_fixture


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_m_range():
    assert parse_m_range("3") == [3]
    assert parse_m_range("0..4") == [0, 1, 2, 3, 4]


def test_report_single(capsys):
    code, out, _ = run(capsys, "report", "--m", "1")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["d3"] == "-1/4"
    assert data["schema"] == "obcalc.certificate/1"
    assert data["strict"] is True


def test_report_range_is_order_stable(capsys):
    code, out, _ = run(capsys, "report", "--m", "0..20", "--jobs", "4")
    assert code == EXIT_OK
    data = json.loads(out)
    assert [r["m"] for r in data["reports"]] == list(range(21))
    code, serial, _ = run(capsys, "report", "--m", "0..20")
    assert serial == out


def test_report_markdown(capsys):
    code, out, _ = run(capsys, "report", "--m", "2", "--format", "markdown")
    assert code == EXIT_OK
    assert out.startswith("# xi_2")


def test_nf_braid_relation(capsys):
    _, aba, _ = run(capsys, "nf", "--word", "a b a")
    _, bab, _ = run(capsys, "nf", "--word", "b a b")
    assert aba == bab
    assert json.loads(aba) == {"schema": "obcalc.garside/1", "delta_power": 1, "factors": []}


def test_nf_expands_conjugates(capsys):
    _, factored, _ = run(capsys, "nf", "--word", "T(1,1) T(1,-1) A A A")
    _, phi, _ = run(capsys, "nf", "--word", "a b a b a b A A A A A A A")
    assert factored == phi


def test_action(capsys):
    code, out, _ = run(capsys, "action", "--word", "a b a b a b A A A A")
    assert code == EXIT_OK
    assert json.loads(out)["matrix"] == [[-1, 4], [0, -1]]


def test_d3_diagram_file(tmp_path, capsys):
    path = tmp_path / "d.json"
    path.write_text(json.dumps({"components": [{"tb": -1, "rot": 0, "coeff": -1}], "linking": [[0]]}))
    code, out, _ = run(capsys, "d3", "--diagram", str(path))
    assert code == EXIT_OK
    assert json.loads(out)["d3"] == "1/4"
    path.write_text(json.dumps(figure3_diagram(4).to_json()))
    _, out, _ = run(capsys, "d3", "--diagram", str(path), "--format", "markdown")
    assert out.strip() == "-1"


def test_d3_builtin(capsys):
    code, out, _ = run(capsys, "d3", "--m", "3")
    assert code == EXIT_OK
    assert json.loads(out)["d3"] == "-3/4"


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--pqr", "-2", "-2", "4")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["tag"] == "small_sfs" and data["e0"] == -1 and data["right_veering"] is False
    assert "floor" in data["rule"]
    _, out, _ = run(capsys, "classify", "--pqr", "1", "5", "7")
    assert json.loads(out)["tag"] == "connected_sum_of_lens_spaces"


def test_handles(capsys):
    code, out, _ = run(capsys, "handles", "--m", "3")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["framings"] == [1, 1, 1, -2, 0] and data["one_handles"] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["nf", "--word", "a x"],
        ["action", "--word", "T(2,4)"],
        ["report", "--m", "5..2"],
        ["report", "--m", "-1"],
        ["d3", "--diagram", "/nonexistent.json"],
        ["d3", "--m", "0"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert err


def test_singular_diagram_is_usage_error(tmp_path, capsys):
    path = tmp_path / "d.json"
    path.write_text(json.dumps({"components": [{"tb": -1, "rot": 0, "coeff": 1}], "linking": [[0]]}))
    code, _, err = run(capsys, "d3", "--diagram", str(path))
    assert code == EXIT_USAGE
    assert "not a rational homology sphere" in err


def test_fixture_mismatch_exits_one(tmp_path, monkeypatch, capsys):
    fixture = load_fixture()
    data = {
        "schema": "obcalc.figure3-fixture",
        "version": 2,
        "holes": {"m": 1, "const": 4},
        "stabilization_sign": -1,
        # drop the middle curve: a different manifold, so the d3 pin fails
        "curves": [
            {"name": n, "holes": h if h == "all" else list(h), "coeff": c}
            for n, h, c in fixture.curves
            if n != "middle"
        ],
        "checks": {"d3": {"num_m": -1, "num_const": 0, "den": 4}, "abs_det": 4},
    }
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(data))
    monkeypatch.setenv("OBCALC_FIXTURES", str(path))
    code, _, err = run(capsys, "d3", "--m", "2")
    assert code == EXIT_VERIFY
    assert "verification failed" in err
    code, _, err = run(capsys, "report", "--m", "2")
    assert code == EXIT_VERIFY
    assert "m=2" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "obcalc.cli", "handles", "--m", "0"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["framings"] == [-2, 0]
