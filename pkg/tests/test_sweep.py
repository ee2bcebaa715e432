"""Sweep-Gitter, Zweigverfolgung, EP-Ortskurve und CSV-Ausgabe."""

from __future__ import annotations

import math

import pytest

from app.exceptions import GridPointFailure, InvalidGridSpec
from app.sweep import (
    EP_HEADER,
    GRID_HEADER,
    Axis,
    CellEvaluation,
    GridSpec,
    SweepScenario,
    ep_locus,
    evaluate_cell,
    parse_axis,
    render_ep_csv,
    render_grid_csv,
    search_interval,
    sweep_grid,
    track_cells,
)
from app.sweep.ep_locus import locate


def _analytic_ep(mt: float) -> float:
    u = 1.0 - mt * mt
    return math.sqrt((2 - 2 * math.sqrt(u)) / u)


def _pt_spec(m: str = "0:0.95:4", g: str = "0:1.5:4") -> GridSpec:
    return GridSpec(SweepScenario.PT, parse_axis(m), parse_axis(g))


def _data_rows(csv_text: str) -> list[list[str]]:
    lines = [line for line in csv_text.split("\n") if line and not line.startswith("#")]
    return [line.split(",") for line in lines[1:]]


# ---------------------------------------------------------------------------
# Achsen und Gitter
# ---------------------------------------------------------------------------

def test_parse_axis() -> None:
    axis = parse_axis("0:0.95:4")
    assert axis == Axis(0.0, 0.95, 4)
    assert axis.values()[0] == 0.0
    assert axis.values()[-1] == 0.95
    assert parse_axis("0.3:0.9:1").values() == [0.3]


@pytest.mark.parametrize("text", ["0:1", "a:1:3", "0:1:0", "0:inf:3", "0:1:2.5"])
def test_parse_axis_rejects(text: str) -> None:
    with pytest.raises(InvalidGridSpec):
        parse_axis(text)


def test_grid_rejects_overcoupling() -> None:
    with pytest.raises(InvalidGridSpec):
        _pt_spec(m="0:1.0:3")
    with pytest.raises(InvalidGridSpec):
        GridSpec(SweepScenario.PT, parse_axis("0:0.5:3"), parse_axis("0:1:3"), l2t=-1.0)


def test_circuit_at_applies_gain_sign() -> None:
    pt = GridSpec(SweepScenario.PT, parse_axis("0:0.5:2"), parse_axis("0:1:2"), c2t=2.0)
    loss = GridSpec(SweepScenario.EQUAL_LOSS, parse_axis("0:0.5:2"), parse_axis("0:1:2"), c2t=2.0)
    assert pt.circuit_at(0.3, 0.4).g2t == pytest.approx(-0.8)
    assert loss.circuit_at(0.3, 0.4).g2t == pytest.approx(0.8)


def test_points_are_row_major() -> None:
    points = _pt_spec(m="0:0.5:2", g="0:1:3").points()
    assert points == [(0.0, 0.0), (0.0, 0.5), (0.0, 1.0), (0.5, 0.0), (0.5, 0.5), (0.5, 1.0)]


# ---------------------------------------------------------------------------
# Sweep
# ---------------------------------------------------------------------------

def test_pt_sweep_shape(tolerances) -> None:
    cells = sweep_grid(_pt_spec(), tolerances)
    assert len(cells) == 16
    first = cells[0]
    # entkoppelt, verlustfrei: Doppelwurzel bei 1
    assert first.branch_id == 5
    assert first.re_mean == pytest.approx(1.0)
    assert first.ep_flag


def test_equal_loss_mean_at_zero_gain(tolerances) -> None:
    spec = GridSpec(SweepScenario.EQUAL_LOSS, parse_axis("0.2:0.2:1"), parse_axis("0:0.5:3"))
    cells = sweep_grid(spec, tolerances)
    assert cells[0].re_mean == pytest.approx(1.015452, abs=1e-6)
    assert cells[0].im_mean == pytest.approx(0.0, abs=1e-12)
    # gleiche Verluste: Im(Mittelwert) = g/2
    assert [c.im_mean for c in cells] == pytest.approx([0.0, 0.125, 0.25], abs=1e-9)


def test_pt_phase_dichotomy(tolerances) -> None:
    spec = GridSpec(SweepScenario.PT, parse_axis("0.6:0.6:1"), parse_axis("0:1.5:16"))
    g_ep = _analytic_ep(0.6)
    for cell in sweep_grid(spec, tolerances):
        if cell.g < g_ep - 1e-3:
            assert abs(cell.im_dev_p) < 1e-9
        elif cell.g > g_ep + 1e-3:
            assert abs(cell.re_dev_p) < 1e-9
            assert abs(cell.im_dev_p) > 0
        assert cell.re_dev_m == -cell.re_dev_p


def test_parallel_sweep_is_identical(tolerances) -> None:
    spec = _pt_spec()
    sequential = render_grid_csv(spec, sweep_grid(spec, tolerances, workers=1))
    parallel = render_grid_csv(spec, sweep_grid(spec, tolerances, workers=2))
    assert sequential == parallel


def test_failed_point_raises_or_becomes_hole(tolerances) -> None:
    spec = _pt_spec(m="0:0.5:2", g="0:1:2")
    evaluations = [evaluate_cell((spec, m, g, tolerances)) for m, g in spec.points()]
    evaluations[1] = CellEvaluation(m=0.0, g=1.0, error_type="NoConvergence", error="Testfehler")

    with pytest.raises(GridPointFailure) as exc:
        track_cells(spec, evaluations)
    assert exc.value.g == 1.0
    assert "NoConvergence" in str(exc.value.cause)

    cells = track_cells(spec, evaluations, skip_failures=True)
    assert cells[1].is_hole
    assert math.isnan(cells[1].re_mean)
    assert not cells[2].is_hole


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------

def test_grid_csv_layout(tolerances) -> None:
    spec = _pt_spec()
    text = render_grid_csv(spec, sweep_grid(spec, tolerances))
    assert "\r" not in text
    assert text.endswith("\n")
    header = next(line for line in text.split("\n") if not line.startswith("#"))
    assert tuple(header.split(",")) == GRID_HEADER
    rows = _data_rows(text)
    assert len(rows) == 16
    assert [row[0] for row in rows[:4]] == ["0.0"] * 4
    assert rows[0][9] == "1"


# ---------------------------------------------------------------------------
# EP-Ortskurve
# ---------------------------------------------------------------------------

def test_search_interval_expands() -> None:
    assert search_interval(0.4, 1) == pytest.approx((0.2, 0.9))
    assert search_interval(0.4, 2) == pytest.approx((0.1, 1.8))


def test_ep_locus_matches_analytic(tolerances) -> None:
    locus = ep_locus(_pt_spec(m="0:0.6:3"), tolerances.ep_tol, tolerances)
    assert [p.m for p in locus.points] == [0.0, 0.3, 0.6]
    assert locus.failures == 0
    assert locus.points[0].g_ep == 0.0
    assert locus.points[1].g_ep == pytest.approx(_analytic_ep(0.3), abs=1e-6)
    assert locus.points[2].g_ep == pytest.approx(math.sqrt(0.625), abs=1e-6)


def test_locate_expands_bracket(tolerances) -> None:
    point = locate(_pt_spec(m="0.9:0.9:1"), 0.9, tolerances.ep_tol, tolerances)
    assert point.found
    assert point.attempts == 2
    assert point.g_ep == pytest.approx(_analytic_ep(0.9), abs=1e-6)


def test_ep_locus_requires_pt(tolerances) -> None:
    spec = GridSpec(SweepScenario.EQUAL_LOSS, parse_axis("0.2:0.6:3"), parse_axis("0:1:2"))
    with pytest.raises(InvalidGridSpec):
        ep_locus(spec, tolerances.ep_tol, tolerances)


def test_ep_csv(tolerances) -> None:
    spec = _pt_spec(m="0.6:0.6:1")
    text = render_ep_csv(spec, ep_locus(spec, tolerances.ep_tol, tolerances))
    header = next(line for line in text.split("\n") if not line.startswith("#"))
    assert tuple(header.split(",")) == EP_HEADER
    rows = _data_rows(text)
    assert len(rows) == 1
    assert float(rows[0][1]) == pytest.approx(0.790569, abs=1e-6)
