"""Vergleich geschlossener Formeln mit den numerischen Hamilton-Zweigen.

Jeder geschlossene Wert wird dem nächstgelegenen numerischen Wert
derselben Rolle über alle gültigen Zweige zugeordnet:
    diagonal         Ω̃1, Ω̃2       ↔ H[0][0], H[1][1]
    coupling         κ12, κ21      ↔ H[0][1], H[1][0]
    primed-diagonal  Ω̃1', Ω̃2'     ↔ −K[0][0], −K[1][1]
    primed-coupling  κ12', κ21'    ↔ K[0][1], K[1][0]
    eigenvector      v±            ↔ v± der Zweige (letzte Komponente 1)

Der Bericht ist rein informativ; der numerische Pfad ist maßgeblich.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from app.logging_config import get_logger
from app.paperforms.closed_forms import GeneralSolutions, SpecialCaseSolutions
from app.solver.hamiltonian import BranchSet
from app.solver.spectra import eigenpairs

logger = get_logger("paperforms")


class Verdict(str, Enum):
    MATCH = "match"
    MISMATCH = "mismatch"
    UNDEFINED = "undefined"


class Role(str, Enum):
    DIAGONAL = "diagonal"
    COUPLING = "coupling"
    PRIMED_DIAGONAL = "primed-diagonal"
    PRIMED_COUPLING = "primed-coupling"
    EIGENVECTOR = "eigenvector"


@dataclass(frozen=True)
class ComparisonRow:
    """Ein geschlossener Wert und sein nächster numerischer Partner.

    Eigenvektoren werden über ihre erste Komponente geführt (letzte = 1).
    """

    solution: int
    quantity: str
    role: Role
    closed_value: complex
    nearest_numerical_value: complex
    abs_gap: float
    rel_gap: float
    verdict: Verdict


@dataclass(frozen=True)
class ComparisonReport:
    source: str
    rows: tuple[ComparisonRow, ...]
    tol_compare: float
    provenance: str

    def count(self, verdict: Verdict) -> int:
        return sum(1 for r in self.rows if r.verdict == verdict)

    @property
    def summary(self) -> dict[str, int]:
        return {v.value: self.count(v) for v in Verdict}


# ---------------------------------------------------------------------------
# Numerische Kandidaten
# ---------------------------------------------------------------------------

def _numerical_candidates(numerical: BranchSet) -> dict[Role, list[complex]]:
    candidates: dict[Role, list[complex]] = {role: [] for role in Role}
    for branch in numerical.valid():
        H, K = branch.H, branch.K
        assert H is not None and K is not None
        candidates[Role.DIAGONAL] += [complex(H[0, 0]), complex(H[1, 1])]
        candidates[Role.COUPLING] += [complex(H[0, 1]), complex(H[1, 0])]
        candidates[Role.PRIMED_DIAGONAL] += [complex(-K[0, 0]), complex(-K[1, 1])]
        candidates[Role.PRIMED_COUPLING] += [complex(K[0, 1]), complex(K[1, 0])]

        spectrum = eigenpairs(H)
        for v in (spectrum.v_plus, spectrum.v_minus):
            if v[1] != 0:
                candidates[Role.EIGENVECTOR].append(complex(v[0] / v[1]))
    return candidates


def _closed_quantities(
    closed: SpecialCaseSolutions | GeneralSolutions,
) -> list[tuple[int, str, Role, complex, bool]]:
    """(Lösung, Größe, Rolle, Wert, Lösung endlich) für jeden geschlossenen Wert."""
    items: list[tuple[int, str, Role, complex, bool]] = []

    if isinstance(closed, GeneralSolutions):
        for k, s in enumerate(closed.solutions):
            items += [
                (k, "omega1", Role.DIAGONAL, s.omega1, s.finite),
                (k, "omega2", Role.DIAGONAL, s.omega2, s.finite),
                (k, "kappa12", Role.COUPLING, s.kappa12, s.finite),
                (k, "kappa21", Role.COUPLING, s.kappa21, s.finite),
                (k, "omega1_prime", Role.PRIMED_DIAGONAL, s.omega1_prime, s.finite),
                (k, "omega2_prime", Role.PRIMED_DIAGONAL, s.omega2_prime, s.finite),
                (k, "kappa12_prime", Role.PRIMED_COUPLING, s.kappa12_prime, s.finite),
                (k, "kappa21_prime", Role.PRIMED_COUPLING, s.kappa21_prime, s.finite),
            ]
        return items

    for k, (w1, w2, finite) in enumerate(zip(closed.values, closed.omega2, closed.finite)):
        items.append((k, "omega1", Role.DIAGONAL, w1, finite))
        if w2 != w1:
            items.append((k, "omega2", Role.DIAGONAL, w2, finite))
        if closed.kappa12 is not None and closed.kappa21 is not None:
            items.append((k, "kappa12", Role.COUPLING, closed.kappa12[k], finite))
            items.append((k, "kappa21", Role.COUPLING, closed.kappa21[k], finite))
    if closed.eigenvectors is not None:
        for k, (first, last) in enumerate(closed.eigenvectors):
            items.append((k, "eigenvector", Role.EIGENVECTOR, complex(first / last), True))
    return items


# ---------------------------------------------------------------------------
# Vergleich
# ---------------------------------------------------------------------------

def compare(
    closed: SpecialCaseSolutions | GeneralSolutions,
    numerical: BranchSet,
    tol_compare: float = 1e-6,
) -> ComparisonReport:
    """Ordnet jedem geschlossenen Wert den nächsten numerischen Wert gleicher Rolle zu."""
    candidates = _numerical_candidates(numerical)
    rows: list[ComparisonRow] = []

    for solution, quantity, role, value, finite in _closed_quantities(closed):
        pool = candidates[role]
        if not finite or not cmath.isfinite(value) or not pool:
            rows.append(ComparisonRow(
                solution=solution,
                quantity=quantity,
                role=role,
                closed_value=value,
                nearest_numerical_value=complex(math.nan, math.nan),
                abs_gap=math.nan,
                rel_gap=math.nan,
                verdict=Verdict.UNDEFINED,
            ))
            continue

        gaps = np.abs(np.array(pool) - value)
        idx = int(np.argmin(gaps))
        nearest = pool[idx]
        abs_gap = float(gaps[idx])
        rel_gap = abs_gap / abs(nearest) if nearest != 0 else abs_gap
        verdict = Verdict.MATCH if rel_gap <= tol_compare else Verdict.MISMATCH
        rows.append(ComparisonRow(
            solution=solution,
            quantity=quantity,
            role=role,
            closed_value=value,
            nearest_numerical_value=nearest,
            abs_gap=abs_gap,
            rel_gap=rel_gap,
            verdict=verdict,
        ))

    source = "general" if isinstance(closed, GeneralSolutions) else closed.kind.value
    report = ComparisonReport(
        source=source,
        rows=tuple(rows),
        tol_compare=tol_compare,
        provenance=closed.note,
    )
    if report.count(Verdict.MISMATCH):
        logger.info("Formelvergleich (%s): %s", source, report.summary)
    return report
