"""Löser-Pipeline: Orchestrierung und Schrankenprüfung."""

from __future__ import annotations

import pytest

from app.circuit.models import NormalizedCircuit
from app.solver import SolverPipeline, solve_circuit


def test_lossless_result(pipeline: SolverPipeline, lossless) -> None:
    result = pipeline.solve(lossless(0.6))
    assert result.ok
    assert result.violations == []
    assert result.branches.valid_count == 4
    assert result.spectrum((1, 2)) is None
    assert result.spectrum((2, 3)) is not None
    assert result.duration_seconds >= 0.0
    assert len(result.spectra) == 6


def test_generic_result(pipeline: SolverPipeline, generic_circuit: NormalizedCircuit) -> None:
    result = pipeline.solve(generic_circuit)
    assert result.ok
    assert all(s is not None for s in result.spectra)
    assert max(result.roots.residuals) < 1e-10


def test_decay_sign_convention(pipeline: SolverPipeline) -> None:
    # Verluste in beiden Kreisen: alle Moden klingen ab (Im > 0)
    lossy = NormalizedCircuit(l2t=1.0, c2t=1.0, g1t=0.2, g2t=0.3, mt=0.3)
    assert all(z.imag > 0 for z in pipeline.solve(lossy).roots.roots)


def test_solve_circuit_shortcut(lossless) -> None:
    result = solve_circuit(lossless(0.6))
    assert result.roots[3] == pytest.approx(1.581139, abs=1e-6)
