"""Kommandozeile: Unterbefehle, Exit-Codes, deterministische Ausgabe."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

import app.main as cli
from app.main import run
from app.verify import SuiteResult

LOSSLESS = {"raw": {"l1": 1.0, "c1": 1.0, "g1": 0.0, "l2": 1.0, "c2": 1.0, "g2": 0.0, "m": 0.6}}


@pytest.fixture
def params(tmp_path: Path) -> Path:
    path = tmp_path / "c.json"
    path.write_text(json.dumps(LOSSLESS), encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------

def test_solve_report(params: Path, tmp_path: Path) -> None:
    out = tmp_path / "report.json"
    assert run(["solve", "--params", str(params), "--out", str(out)]) == 0

    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["ok"] is True
    assert report["valid_count"] == 4
    assert report["circuit"]["scenario"] == "lossless"
    roots = [r["re"] for r in report["oracle"]["roots"]]
    assert roots == pytest.approx([-1.581139, -0.790569, 0.790569, 1.581139], abs=1e-6)
    assert len(report["branches"]) == 6
    assert report["paper_closed_forms"]["special_case"]["source"] == "lossless"
    assert report["tolerances"]["tol_compare"] == 1e-6


def test_solve_is_deterministic(params: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["solve", "--params", str(params)]) == 0
    first = capsys.readouterr().out
    assert run(["solve", "--params", str(params)]) == 0
    assert capsys.readouterr().out == first
    assert list(json.loads(first)) == sorted(json.loads(first))


def test_solve_tolerance_override(params: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["solve", "--params", str(params), "--tol-compare", "0.05"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["tolerances"]["tol_compare"] == 0.05


# ---------------------------------------------------------------------------
# sweep / ep
# ---------------------------------------------------------------------------

def test_sweep_rows(tmp_path: Path) -> None:
    out = tmp_path / "grid.csv"
    code = run(["sweep", "--scenario", "pt", "--m", "0:0.95:4", "--g", "0:1.5:4", "--out", str(out)])
    assert code == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    data = [line for line in lines if not line.startswith("#")]
    assert data[0].startswith("m,g,re_mean")
    assert len(data) == 17


def test_ep_csv(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["ep", "--m", "0.6:0.6:1"]) == 0
    lines = [line for line in capsys.readouterr().out.splitlines() if not line.startswith("#")]
    assert lines[0] == "m,g_ep,bracket_lo,bracket_hi"
    assert float(lines[1].split(",")[1]) == pytest.approx(0.790569, abs=1e-6)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_success_writes_summary(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    monkeypatch.setattr(cli, "verify", lambda *args: [SuiteResult("demo", checked=3)])
    out = tmp_path / "verify.json"
    assert run(["verify", "--random", "0", "--seed", "42", "--out", str(out)]) == 0
    summary = json.loads(out.read_text(encoding="utf-8"))
    assert summary["seed"] == 42
    assert summary["suites"][0]["passed"] is True


def test_verify_failure_exit_code(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    monkeypatch.setattr(cli, "verify", lambda *args: [SuiteResult("demo", checked=1, failures=["kaputt"])])
    assert run(["verify"]) == 2
    captured = capsys.readouterr()
    assert "FAIL demo" in captured.out
    assert "kaputt" in captured.err


# ---------------------------------------------------------------------------
# Exit-Codes
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["solve"],
        ["sweep", "--scenario", "chaos"],
        ["sweep", "--m", "0:1.2:3"],
        ["sweep", "--g", "0:1"],
        ["sweep", "--workers", "0"],
        ["verify", "--random", "-1"],
    ],
)
def test_input_errors_exit_1(argv: list[str]) -> None:
    assert run(argv) == 1


def test_invalid_tolerance_exit_1(params: Path) -> None:
    assert run(["solve", "--params", str(params), "--tol-roots", "-1"]) == 1


def test_invalid_parameters_exit_1(tmp_path: Path) -> None:
    path = tmp_path / "bad.json"
    bad = {"raw": dict(LOSSLESS["raw"], m=1.5)}
    path.write_text(json.dumps(bad), encoding="utf-8")
    assert run(["solve", "--params", str(path)]) == 1


def test_missing_file_exit_3(tmp_path: Path) -> None:
    assert run(["solve", "--params", str(tmp_path / "fehlt.json")]) == 3


def test_unwritable_output_exit_3(params: Path, tmp_path: Path) -> None:
    assert run(["solve", "--params", str(params), "--out", str(tmp_path / "nope" / "r.json")]) == 3


def test_version_exits_0() -> None:
    assert run(["--version"]) == 0
