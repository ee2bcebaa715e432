"""Gemeinsame Fixtures: Referenzschaltungen, Toleranzen, Pipeline."""

from __future__ import annotations

from collections.abc import Callable

import pytest

from app.circuit.models import NormalizedCircuit, RawCircuit
from app.config import Tolerances
from app.solver.pipeline import SolverPipeline


def lossless_circuit(mt: float) -> NormalizedCircuit:
    return NormalizedCircuit(l2t=1.0, c2t=1.0, g1t=0.0, g2t=0.0, mt=mt)


def pt_circuit(mt: float, g: float) -> NormalizedCircuit:
    return NormalizedCircuit(l2t=1.0, c2t=1.0, g1t=g, g2t=-g, mt=mt)


def equal_loss_circuit(mt: float, g: float) -> NormalizedCircuit:
    return NormalizedCircuit(l2t=1.0, c2t=1.0, g1t=g, g2t=g, mt=mt)


@pytest.fixture
def tolerances() -> Tolerances:
    return Tolerances()


@pytest.fixture
def pipeline(tolerances: Tolerances) -> SolverPipeline:
    return SolverPipeline(tolerances)


@pytest.fixture
def lossless() -> Callable[[float], NormalizedCircuit]:
    return lossless_circuit


@pytest.fixture
def pt() -> Callable[[float, float], NormalizedCircuit]:
    return pt_circuit


@pytest.fixture
def generic_circuit() -> NormalizedCircuit:
    """Verlustbehaftete, verstimmte Schaltung ohne Sonderfall."""
    return NormalizedCircuit(l2t=1.3, c2t=0.8, g1t=0.2, g2t=-0.05, mt=0.4)


@pytest.fixture
def raw_lossless() -> RawCircuit:
    """Physikalische Werte mit ω1 = 1/sqrt(2e-6·5e-9) und M̃ = 0.6."""
    return RawCircuit(l1=2e-6, c1=5e-9, g1=0.0, l2=2e-6, c2=5e-9, g2=0.0, m=1.2e-6)
