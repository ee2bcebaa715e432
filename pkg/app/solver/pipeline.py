"""Löser-Pipeline: Orchestrierung des numerischen Ablaufs für eine Schaltung.

1. Monischer Pencil (P, Q) aus (B, D, U)
2. Charakteristische Quartik
3. Wurzel-Orakel
4. Alle 6 Hamilton-Zweige (inkl. Identitäts-Residuum)
5. Eigenpaare jedes gültigen Zweigs
6. Prüfung aller Residuen gegen ihre Schranken → ok-Flag

Die Pipeline ist zustandslos – Toleranzen werden injiziert.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from app.circuit.models import NormalizedCircuit
from app.config import Tolerances
from app.logging_config import get_logger
from app.solver.hamiltonian import BranchSet, enumerate_branches
from app.solver.pencil import QuadraticPencil, QuarticCoefficients, char_quartic, monic_pencil
from app.solver.roots import RootSet, quartic_roots
from app.solver.spectra import Spectrum, eigenpairs

logger = get_logger("solver")

# Schranke für Orakel-Residuen relativ zu max(1, |z|⁴)·max|a_k|
ROOT_RESIDUAL_BOUND = 1e-10


# ---------------------------------------------------------------------------
# Pipeline-Ergebnis
# ---------------------------------------------------------------------------

@dataclass
class PipelineResult:
    """Gesamtergebnis eines Durchlaufs für eine Schaltung.

    spectra ist parallel zu branches.branches; None bei abgelehnten Zweigen.
    """

    circuit: NormalizedCircuit
    pencil: QuadraticPencil
    quartic: QuarticCoefficients
    roots: RootSet
    branches: BranchSet
    spectra: tuple[Spectrum | None, ...]

    # Verletzte Schranken (leer = alles in Ordnung)
    violations: list[str] = field(default_factory=list)

    # Timing
    duration_seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def spectrum(self, pair: tuple[int, int]) -> Spectrum | None:
        return self.spectra[self.branches.branches.index(self.branches.branch(pair))]


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------

class SolverPipeline:
    """Verkettet Pencil, Orakel, Zweig-Aufzählung und Spektren.

    Verwendung:
        pipeline = SolverPipeline(Tolerances())
        result = pipeline.solve(norm)
    """

    def __init__(self, tolerances: Tolerances | None = None) -> None:
        self._tol = tolerances or Tolerances()

    @property
    def tolerances(self) -> Tolerances:
        return self._tol

    def solve(self, norm: NormalizedCircuit) -> PipelineResult:
        """Führt den vollständigen Ablauf für eine normierte Schaltung durch.

        Raises:
            NumericalError: Fehler in Orakel oder Zweig-Aufzählung.
        """
        start_time = time.monotonic()

        # Schritt 1+2: Pencil und Quartik
        pencil = monic_pencil(norm)
        quartic = char_quartic(pencil)

        # Schritt 3: Orakel
        roots = quartic_roots(quartic, self._tol.tol_roots)
        logger.debug("Wurzeln: %s", roots.roots)

        # Schritt 4: Zweige
        branches = enumerate_branches(pencil, roots, self._tol.tol_subspace, self._tol.tol_residual)

        # Schritt 5: Spektren
        spectra = tuple(eigenpairs(b.H) if b.is_valid else None for b in branches.branches)

        result = PipelineResult(
            circuit=norm,
            pencil=pencil,
            quartic=quartic,
            roots=roots,
            branches=branches,
            spectra=spectra,
        )

        # Schritt 6: Schranken
        result.violations = self._check_bounds(result)
        result.duration_seconds = time.monotonic() - start_time
        if result.violations:
            logger.warning("Schranken verletzt: %s", "; ".join(result.violations))
        logger.info(
            "Pipeline fertig: %d/6 Zweige gültig (%.4fs)",
            branches.valid_count, result.duration_seconds,
        )
        return result

    def _check_bounds(self, result: PipelineResult) -> list[str]:
        violations: list[str] = []
        max_coeff = max(abs(c) for c in result.quartic.coeffs)
        for z, res in zip(result.roots.roots, result.roots.residuals):
            if res > ROOT_RESIDUAL_BOUND * max(1.0, abs(z) ** 4) * max_coeff:
                violations.append(f"Wurzel {z!r}: Residuum {res:.3e}")

        if result.branches.valid_count == 0:
            violations.append("kein gültiger Zweig")
        elif not result.branches.covers_roots():
            violations.append("gültige Zweige decken nicht alle Wurzeln ab")

        bound = self._tol.tol_residual * result.pencil.scale
        for branch in result.branches.valid():
            if branch.solvent_residual > bound:
                violations.append(f"Zweig {branch.pair}: Solventen-Residuum {branch.solvent_residual:.3e}")
            if branch.residual > self._tol.tol_residual:
                violations.append(f"Zweig {branch.pair}: Identitäts-Residuum {branch.residual:.3e}")
        return violations


def solve_circuit(norm: NormalizedCircuit, tolerances: Tolerances | None = None) -> PipelineResult:
    """Kurzform für SolverPipeline(tolerances).solve(norm)."""
    return SolverPipeline(tolerances).solve(norm)
