"""Geschlossene Formeln und ihr Vergleich mit den numerischen Zweigen."""

from __future__ import annotations

import math

import pytest

from app.circuit.models import NormalizedCircuit
from app.exceptions import WrongScenario
from app.paperforms import (
    FIRST_FAMILY_UNDEFINED,
    SpecialCaseKind,
    Verdict,
    closed_general,
    closed_identical,
    closed_lossless,
    closed_pt,
    compare,
    intermediates,
    special_case,
)


def _equal_loss(mt: float, g: float) -> NormalizedCircuit:
    return NormalizedCircuit(l2t=1.0, c2t=1.0, g1t=g, g2t=g, mt=mt)


# ---------------------------------------------------------------------------
# Zwischengrößen und allgemeiner Fall
# ---------------------------------------------------------------------------

def test_intermediates_lossless(lossless) -> None:
    inter = intermediates(lossless(0.6))
    assert inter.gamma == pytest.approx(1.25)
    assert inter.lam == pytest.approx(1.25)
    assert inter.gamma_prime == 0
    assert inter.delta == pytest.approx(0.0, abs=1e-15)


def test_general_decoupled(lossless) -> None:
    solutions = closed_general(lossless(0.0)).solutions
    assert len(solutions) == 6
    values = sorted(s.omega1.real for s in solutions)
    assert values == pytest.approx([-1.0, 0.0, 0.0, 0.0, 0.0, 1.0], abs=1e-12)
    assert all(abs(s.omega1.imag) < 1e-12 for s in solutions)


def test_general_lossless_coupled(lossless) -> None:
    solutions = closed_general(lossless(0.6)).solutions
    values = sorted(s.omega1.real for s in solutions)
    assert values[-1] == pytest.approx(1.225807, abs=1e-6)
    assert values[0] == pytest.approx(-1.225807, abs=1e-6)
    assert any(abs(v - 0.244737) < 1e-6 for v in values)


def test_general_solution_records_substitution(generic_circuit: NormalizedCircuit) -> None:
    solutions = closed_general(generic_circuit)
    assert "l2t" in solutions.note
    assert len(solutions.solutions) == 6
    for s in solutions.solutions:
        # Ω̃1 − jG1/2 = ±Ω̃(Ω̃2)
        gap = s.omega1 - 0.5j * generic_circuit.g1t
        assert min(abs(gap - s.omega_of_omega2), abs(gap + s.omega_of_omega2)) < 1e-9


# ---------------------------------------------------------------------------
# Sonderfälle
# ---------------------------------------------------------------------------

def test_lossless_values(lossless) -> None:
    closed = closed_lossless(lossless(0.6))
    assert closed.kind == SpecialCaseKind.LOSSLESS
    assert [v.real for v in closed.values] == pytest.approx([1.225807, -1.225807, 0.244737, -0.244737], abs=1e-6)
    assert closed.kappa12 is not None
    assert closed.kappa12[0] == pytest.approx(0.6 / (2 * 1.2258066), rel=1e-6)
    assert closed.eigenvectors == ((1.0, 1.0), (-1.0, 1.0))


def test_lossless_decoupled_marks_undefined_coupling(lossless) -> None:
    closed = closed_lossless(lossless(0.0))
    assert closed.finite == (True, True, False, False)
    assert closed.kappa12 is not None and math.isnan(closed.kappa12[2].real)


def test_wrong_scenario(pt) -> None:
    with pytest.raises(WrongScenario) as exc:
        closed_lossless(pt(0.6, 0.5))
    assert exc.value.required == "lossless"
    with pytest.raises(WrongScenario):
        closed_identical(pt(0.6, 0.5))


def test_pt_six_solutions(pt) -> None:
    closed = closed_pt(pt(0.6, 0.5))
    assert len(closed.values) == 6
    assert not closed.flags
    # erste Familie: Ω̃1 = −Ω̃2
    for w1, w2 in zip(closed.values[:2], closed.omega2[:2]):
        assert w1 == pytest.approx(-w2)
    # zweite Familie: Ω̃1 = Ω̃2 + jG1
    for w1, w2 in zip(closed.values[2:], closed.omega2[2:]):
        assert w1 == pytest.approx(w2 + 0.5j)


def test_pt_without_gain_drops_first_family(lossless) -> None:
    closed = closed_pt(lossless(0.6))
    assert closed.flags == (FIRST_FAMILY_UNDEFINED,)
    assert len(closed.values) == 4


def test_identical_four_solutions() -> None:
    closed = closed_identical(_equal_loss(0.2, 0.1))
    assert closed.kind == SpecialCaseKind.IDENTICAL
    assert len(closed.values) == 4
    assert closed.values == closed.omega2
    assert all(v.imag == pytest.approx(0.05) for v in closed.values if abs(v.real) > 0.5)


def test_special_case_dispatch(lossless, pt, generic_circuit: NormalizedCircuit) -> None:
    assert special_case(lossless(0.6)).kind == SpecialCaseKind.LOSSLESS
    assert special_case(pt(0.6, 0.5)).kind == SpecialCaseKind.PT
    assert special_case(_equal_loss(0.2, 0.1)).kind == SpecialCaseKind.IDENTICAL
    assert special_case(generic_circuit) is None


# ---------------------------------------------------------------------------
# Vergleich
# ---------------------------------------------------------------------------

def test_compare_decoupled_matches(pipeline, lossless) -> None:
    report = compare(closed_lossless(lossless(0.0)), pipeline.solve(lossless(0.0)).branches)
    omega_rows = [r for r in report.rows if r.quantity == "omega1" and r.verdict != Verdict.UNDEFINED]
    assert len(omega_rows) == 2
    assert all(r.verdict == Verdict.MATCH and r.abs_gap <= 1e-10 for r in omega_rows)
    assert report.count(Verdict.UNDEFINED) > 0


def test_compare_records_documented_gap(pipeline, lossless) -> None:
    report = compare(closed_lossless(lossless(0.6)), pipeline.solve(lossless(0.6)).branches, 1e-6)
    row = next(r for r in report.rows if r.quantity == "omega1" and r.solution == 0)
    assert row.closed_value.real == pytest.approx(1.225807, abs=1e-6)
    assert row.nearest_numerical_value.real == pytest.approx(1.185854, abs=1e-6)
    assert 0.03 <= row.rel_gap <= 0.04
    assert row.verdict == Verdict.MISMATCH
    assert report.source == "lossless"
    assert sum(report.summary.values()) == len(report.rows)


def test_compare_general_never_raises(pipeline, generic_circuit: NormalizedCircuit) -> None:
    closed = closed_general(generic_circuit)
    report = compare(closed, pipeline.solve(generic_circuit).branches)
    assert report.source == "general"
    assert len(report.rows) == 8 * len(closed.solutions)
