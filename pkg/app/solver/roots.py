"""Wurzel-Orakel der charakteristischen Quartik.

Unabhängig von der Hamilton-Extraktion:
1. Eigenwerte der 4×4-Begleitmatrix (numpy)
2. Newton-Politur bis Residuum ≤ tol_roots·Σ|a_k||z|^k (max. 50 Schritte)
3. Cluster-Verfeinerung: fast zusammenfallende Wurzeln werden als
   Doppelwurzel geprüft (Nullstelle von p′ zwischen ihnen)
4. Sortierung nach (Re, Im), Markierung von Clustern (EP-Indikator)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from app.exceptions import DegenerateLeadingCoefficient, NoConvergence
from app.logging_config import get_logger
from app.solver.pencil import QuarticCoefficients

logger = get_logger("solver")

MAX_NEWTON_STEPS = 50
MIN_LEADING = 1e-300

# Abstand (relativ zu 1+|z|), ab dem zwei Wurzeln als Doppelwurzel geprüft werden
MERGE_DISTANCE = 1e-6
# Abstand, unterhalb dessen ein Paar als Cluster (EP-Indikator) markiert wird
CLUSTER_DISTANCE = 1e-8


@dataclass(frozen=True)
class RootSet:
    """Die vier Wurzeln, aufsteigend nach (Re, Im), mit Residuen |p(z)|.

    clusters enthält Indexpaare (i, j), deren Wurzeln näher als
    1e-8·(1+|z|) beieinander liegen; sie werden trotzdem einzeln geführt.
    """

    roots: tuple[complex, ...]
    residuals: tuple[float, ...]
    clusters: tuple[tuple[int, int], ...] = ()

    def __len__(self) -> int:
        return len(self.roots)

    def __getitem__(self, index: int) -> complex:
        return self.roots[index]

    @property
    def has_cluster(self) -> bool:
        return bool(self.clusters)


# ---------------------------------------------------------------------------
# Hilfsfunktionen
# ---------------------------------------------------------------------------

def _clean(z: complex) -> complex:
    """Entfernt negative Nullen, damit Sortierung und Ausgabe stabil sind."""
    return complex(z.real + 0.0, z.imag + 0.0)


def _target(coeffs: np.ndarray, z: complex, tol: float) -> float:
    return tol * float(np.polyval(np.abs(coeffs), abs(z)))


def _newton(coeffs: np.ndarray, z: complex, tol: float) -> tuple[complex, float, float]:
    """Newton-Politur einer Näherung.

    Schritte werden nur angenommen, wenn sie das Residuum verkleinern.

    Returns:
        (beste Iterierte, deren Residuum, Residuum-Ziel an dieser Stelle)
    """
    deriv = np.polyder(coeffs)
    best = complex(z)
    best_res = abs(complex(np.polyval(coeffs, best)))
    target = _target(coeffs, best, tol)

    for _ in range(MAX_NEWTON_STEPS):
        if best_res <= target:
            break
        slope = complex(np.polyval(deriv, best))
        if slope == 0:
            break
        candidate = best - complex(np.polyval(coeffs, best)) / slope
        res = abs(complex(np.polyval(coeffs, candidate)))
        if not res < best_res:
            break
        best, best_res = candidate, res
        target = _target(coeffs, best, tol)

    return best, best_res, target


def companion_roots(coeffs: np.ndarray | list[complex], tol: float = 1e-13) -> np.ndarray:
    """Alle Wurzeln eines Polynoms (absteigende Koeffizienten) über die Begleitmatrix.

    Führende Nullen werden entfernt, abschließende Nullen als exakte
    Wurzeln z = 0 abgespalten; jede übrige Wurzel wird per Newton poliert,
    ohne bei verfehltem Ziel abzubrechen.
    """
    leading = np.trim_zeros(np.asarray(coeffs, dtype=complex), trim="f")
    a = np.trim_zeros(leading, trim="b")
    zeros = np.zeros(len(leading) - len(a), dtype=complex)
    n = len(a) - 1
    if n < 1:
        return zeros

    companion = np.zeros((n, n), dtype=complex)
    companion[0, :] = -a[1:] / a[0]
    if n > 1:
        companion[1:, :-1] = np.eye(n - 1)

    raw = np.linalg.eigvals(companion)
    polished = np.array([_newton(a, z, tol)[0] for z in raw], dtype=complex)
    return np.concatenate([polished, zeros])


def _merge_double_roots(
    coeffs: np.ndarray, roots: list[complex], residuals: list[float], tol: float,
) -> None:
    """Ersetzt fast zusammenfallende Paare durch eine verfeinerte Doppelwurzel (in place)."""
    deriv = np.polyder(coeffs)
    for i, j in itertools.combinations(range(len(roots)), 2):
        zi, zj = roots[i], roots[j]
        if zi == zj or abs(zi - zj) >= MERGE_DISTANCE * (1.0 + abs(zi)):
            continue
        w, _, _ = _newton(deriv, 0.5 * (zi + zj), tol)
        res = abs(complex(np.polyval(coeffs, w)))
        if res <= _target(coeffs, w, tol):
            logger.debug("Doppelwurzel verfeinert: %r, %r → %r", zi, zj, w)
            roots[i] = roots[j] = w
            residuals[i] = residuals[j] = res


# ---------------------------------------------------------------------------
# Orakel
# ---------------------------------------------------------------------------

def quartic_roots(coeffs: QuarticCoefficients, tol_roots: float = 1e-13) -> RootSet:
    """Alle vier Wurzeln der Quartik.

    Raises:
        DegenerateLeadingCoefficient: |a4| < 1e-300.
        NoConvergence: Residuum-Ziel nach Politur verfehlt.
    """
    original = coeffs.as_array()
    if abs(original[0]) < MIN_LEADING:
        raise DegenerateLeadingCoefficient(f"Leitkoeffizient {original[0]!r} praktisch null")

    monic = original / original[0]
    companion = np.zeros((4, 4), dtype=complex)
    companion[0, :] = -monic[1:]
    companion[1:, :-1] = np.eye(3)

    roots: list[complex] = []
    residuals: list[float] = []
    for z in np.linalg.eigvals(companion):
        best, res, _ = _newton(monic, complex(z), tol_roots)
        roots.append(best)
        residuals.append(res)

    _merge_double_roots(monic, roots, residuals, tol_roots)

    for z, res in zip(roots, residuals):
        target = _target(monic, z, tol_roots)
        if res > target:
            raise NoConvergence(best=z, residual=res, target=target)

    ordered = sorted((_clean(z) for z in roots), key=lambda z: (z.real, z.imag))
    final_residuals = tuple(abs(complex(np.polyval(original, z))) for z in ordered)

    clusters = tuple(
        (i, j)
        for i, j in itertools.combinations(range(4), 2)
        if abs(ordered[i] - ordered[j]) <= CLUSTER_DISTANCE * (1.0 + abs(ordered[i]))
    )
    if clusters:
        logger.info("Wurzel-Cluster (EP-Indikator): %s", clusters)

    return RootSet(roots=tuple(ordered), residuals=final_residuals, clusters=clusters)
