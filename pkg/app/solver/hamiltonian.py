"""Hamilton-Zweige als linke Solventen des monischen Pencils.

Koeffizientenvergleich in
    −B⁻¹·M̄(ω̃) = (ω̃I − H)·(ω̃I + K)
liefert K − H = P und −H·K = Q, also die Matrix-Quadratgleichung
    H² + H·P + Q = 0.

Jede Lösung H hat zwei Wurzeln (λi, λj) der Quartik als Eigenwerte und
deren linke Null-Zeilen u·(λ²I + λP + Q) = 0 als linke Eigenvektoren:
    H = W⁻¹·diag(λi, λj)·W,   W = [ui; uj]

Aus 4 Wurzeln entstehen 6 Paare; Paare mit (numerisch) linear abhängigen
Zeilen werden als entartet abgelehnt.

Ist W schlecht konditioniert, wächst ‖H‖ wie |λi − λj|·cond(W). Das
Startergebnis wird dann per Newton-Iteration auf H² + HP + Q = 0
nachgeschärft (Sylvester-Gleichung je Schritt). Erreicht der Zweig seine
Residuenschranken trotzdem nicht oder weichen die Eigenwerte von H von
(λi, λj) ab, ist H in doppelter Genauigkeit nicht darstellbar und der
Zweig wird ebenfalls als entartet abgelehnt.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np
from scipy.linalg import LinAlgError, solve_sylvester

from app.exceptions import InconsistentInputs, RejectedBranch
from app.logging_config import get_logger
from app.solver.pencil import QuadraticPencil, char_quartic
from app.solver.roots import RootSet

logger = get_logger("solver")

# Feste Aufzählungsreihenfolge der Wurzelpaare
PAIR_ORDER: tuple[tuple[int, int], ...] = tuple(itertools.combinations(range(4), 2))

# Relative Schranke, unter der λ²I + λP + Q als Nullmatrix gilt
FULL_RANK_NULL = 1e-7

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))

# Newton-Schritte auf der Solventengleichung
REFINE_STEPS = 4

# Nachschärfen erst ab diesem Bruchteil der Solventen-Schranke
REFINE_FRACTION = 1e-3

# Relative Abweichung eig(H) ↔ (λi, λj), ab der H unbrauchbar ist
EIGENVALUE_MATCH = 1e-8


class BranchStatus(str, Enum):
    VALID = "valid"
    REJECTED = "rejected-degenerate"


@dataclass(frozen=True, eq=False)
class HamiltonianBranch:
    """Eine Lösung der Faktorisierung für das Wurzelpaar `pair`.

    H = [[Ω̃1, κ12], [κ21, Ω̃2]]; K kodiert T2 = ω̃I + K mit
    Ω̃1' = −K[0][0], κ12' = K[0][1], κ21' = K[1][0], Ω̃2' = −K[1][1].
    Bei abgelehnten Zweigen sind H und K None; ein endliches
    solvent_residual heißt dort, dass H zwar berechnet wurde, seine
    Residuenschranken aber nicht erreicht.
    """

    pair: tuple[int, int]
    eigenvalues: tuple[complex, complex]
    status: BranchStatus
    subspace_condition: float
    H: np.ndarray | None = None
    K: np.ndarray | None = None
    solvent_residual: float = math.nan
    residual: float = math.nan

    @property
    def is_valid(self) -> bool:
        return self.status == BranchStatus.VALID

    def _require_valid(self) -> tuple[np.ndarray, np.ndarray]:
        if self.H is None or self.K is None or not self.is_valid:
            raise RejectedBranch(self.pair)
        return self.H, self.K

    # --- Hamilton-Einträge ---
    @property
    def omega1(self) -> complex:
        return complex(self._require_valid()[0][0, 0])

    @property
    def kappa12(self) -> complex:
        return complex(self._require_valid()[0][0, 1])

    @property
    def kappa21(self) -> complex:
        return complex(self._require_valid()[0][1, 0])

    @property
    def omega2(self) -> complex:
        return complex(self._require_valid()[0][1, 1])

    # --- T2-Parameter ---
    @property
    def omega1_prime(self) -> complex:
        return complex(-self._require_valid()[1][0, 0])

    @property
    def kappa12_prime(self) -> complex:
        return complex(self._require_valid()[1][0, 1])

    @property
    def kappa21_prime(self) -> complex:
        return complex(self._require_valid()[1][1, 0])

    @property
    def omega2_prime(self) -> complex:
        return complex(-self._require_valid()[1][1, 1])

    def with_identity_residual(self, value: float) -> "HamiltonianBranch":
        """Kopie mit eingetragenem Identitäts-Residuum."""
        return replace(self, residual=value)


@dataclass(frozen=True)
class BranchSet:
    """Alle 6 Zweige in fester Reihenfolge (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)."""

    branches: tuple[HamiltonianBranch, ...]
    roots: RootSet

    @property
    def valid_count(self) -> int:
        return sum(1 for b in self.branches if b.is_valid)

    def valid(self) -> list[HamiltonianBranch]:
        return [b for b in self.branches if b.is_valid]

    def branch(self, pair: tuple[int, int]) -> HamiltonianBranch:
        return self.branches[PAIR_ORDER.index(tuple(sorted(pair)))]

    def covers_roots(self) -> bool:
        """Jede Wurzel kommt in mindestens einem gültigen Zweig vor."""
        covered = {k for b in self.valid() for k in b.pair}
        return covered == set(range(len(self.roots)))


# ---------------------------------------------------------------------------
# Linke Null-Zeilen
# ---------------------------------------------------------------------------

def _normalize_row(u: np.ndarray) -> np.ndarray:
    """Betragsgrößter Eintrag = 1, erster Eintrag ≠ 0 reell positiv."""
    u = u / u[int(np.argmax(np.abs(u)))]
    for entry in u:
        if entry != 0:
            u = u * (abs(entry) / entry)
            break
    return u


def left_null_rows(pencil: QuadraticPencil, lam: complex) -> list[np.ndarray]:
    """Kandidaten für u mit u·(λ²I + λP + Q) = 0.

    Regulär: eine Zeile der Adjunkte (die betragsgrößere).  Ist die Matrix
    numerisch null, ist jede Zeile Lösung; dann werden beide
    Einheitsvektoren als Kandidaten geliefert.
    """
    A = pencil.evaluate(lam)
    scale = abs(lam) ** 2 + abs(lam) * float(np.max(np.abs(pencil.P))) + float(np.max(np.abs(pencil.Q)))
    if float(np.max(np.abs(A))) <= FULL_RANK_NULL * scale:
        return [np.array([1.0, 0.0], dtype=complex), np.array([0.0, 1.0], dtype=complex)]

    first = np.array([A[1, 1], -A[0, 1]], dtype=complex)
    second = np.array([-A[1, 0], A[0, 0]], dtype=complex)
    row = first if np.max(np.abs(first)) >= np.max(np.abs(second)) else second
    return [_normalize_row(row)]


def _reciprocal_condition(W: np.ndarray) -> float:
    s = np.linalg.svd(W, compute_uv=False)
    return float(s[-1] / s[0]) if s[0] > 0 else 0.0


def _collinearity(ui: np.ndarray, uj: np.ndarray) -> float:
    return abs(ui[0] * uj[1] - ui[1] * uj[0]) / (np.linalg.norm(ui) * np.linalg.norm(uj))


# ---------------------------------------------------------------------------
# Identitäts-Residuum
# ---------------------------------------------------------------------------

def sample_points(count: int = 16, radius: float = 2.0) -> list[complex]:
    """Deterministische Stützstellen in der Kreisscheibe |ω̃| ≤ radius (Goldener Winkel)."""
    return [
        radius * (k + 1) / count * complex(math.cos(k * GOLDEN_ANGLE), math.sin(k * GOLDEN_ANGLE))
        for k in range(count)
    ]


def residual_identity(
    branch: HamiltonianBranch,
    pencil: QuadraticPencil,
    samples: list[complex] | None = None,
) -> float:
    """max ‖(−B⁻¹)·M̄(ω̃) − (ω̃I − H)(ω̃I + K)‖max / (1+|ω̃|²) über die Stützstellen.

    Raises:
        RejectedBranch: Zweig ist entartet.
    """
    H, K = branch._require_valid()
    eye = np.eye(2, dtype=complex)
    worst = 0.0
    for w in samples if samples is not None else sample_points():
        lhs = -np.linalg.solve(pencil.B, pencil.system_matrix(w))
        rhs = (w * eye - H) @ (w * eye + K)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))) / (1.0 + abs(w) ** 2))
    return worst


# ---------------------------------------------------------------------------
# Nachschärfen
# ---------------------------------------------------------------------------

def solvent_residual(H: np.ndarray, pencil: QuadraticPencil) -> float:
    """‖H² + HP + Q‖max."""
    return float(np.max(np.abs(H @ H + H @ pencil.P + pencil.Q)))


def refine_solvent(
    H: np.ndarray,
    pencil: QuadraticPencil,
    target: float,
    steps: int = REFINE_STEPS,
) -> tuple[np.ndarray, float]:
    """Newton-Iteration auf H² + HP + Q = 0.

    Mit H → H + E und R = H² + HP + Q bleibt in erster Ordnung die
    Sylvester-Gleichung H·E + E·(H + P) = −R.  Ein Schritt wird nur
    übernommen, wenn er das Residuum verkleinert.

    Returns:
        (bestes H, dessen Solventen-Residuum)
    """
    best = H
    best_residual = solvent_residual(H, pencil)
    for _ in range(steps):
        if best_residual <= target:
            break
        R = best @ best + best @ pencil.P + pencil.Q
        try:
            E = solve_sylvester(best, best + pencil.P, -R)
        except (LinAlgError, ValueError):
            break
        if not np.all(np.isfinite(E)):
            break
        candidate = best + E
        residual = solvent_residual(candidate, pencil)
        if not residual < best_residual:
            break
        best, best_residual = candidate, residual
    return best, best_residual


def eigenvalue_gap(H: np.ndarray, lam_i: complex, lam_j: complex) -> float:
    """Relative Abweichung der Eigenwerte von H vom Wurzelpaar (beste Zuordnung)."""
    a, b = np.linalg.eigvals(H)

    def rel(z: complex, lam: complex) -> float:
        return abs(z - lam) / max(1.0, abs(lam))

    return min(
        max(rel(a, lam_i), rel(b, lam_j)),
        max(rel(a, lam_j), rel(b, lam_i)),
    )


# ---------------------------------------------------------------------------
# Aufzählung
# ---------------------------------------------------------------------------

def _rejected(
    pair: tuple[int, int],
    eigenvalues: tuple[complex, complex],
    condition: float,
    solvent: float = math.nan,
) -> HamiltonianBranch:
    return HamiltonianBranch(
        pair=pair,
        eigenvalues=eigenvalues,
        status=BranchStatus.REJECTED,
        subspace_condition=condition,
        solvent_residual=solvent,
    )


def _solve_pair(
    pencil: QuadraticPencil,
    pair: tuple[int, int],
    lam_i: complex,
    lam_j: complex,
    rows_i: list[np.ndarray],
    rows_j: list[np.ndarray],
    tol_subspace: float,
    tol_residual: float,
) -> HamiltonianBranch:
    ui, uj = max(
        itertools.product(rows_i, rows_j),
        key=lambda rows: _collinearity(*rows),
    )
    W = np.vstack([ui, uj])
    condition = _reciprocal_condition(W)

    if condition < tol_subspace:
        logger.info("Zweig %s abgelehnt: 1/cond(W) = %.3e", pair, condition)
        return _rejected(pair, (lam_i, lam_j), condition)

    bound = tol_residual * pencil.scale
    H = np.linalg.solve(W, np.diag([lam_i, lam_j]) @ W)
    solvent = solvent_residual(H, pencil)
    if solvent > REFINE_FRACTION * bound:
        H, refined = refine_solvent(H, pencil, REFINE_FRACTION * bound)
        logger.debug("Zweig %s nachgeschärft: %.3e → %.3e", pair, solvent, refined)
        solvent = refined

    if solvent > bound:
        logger.info(
            "Zweig %s abgelehnt: Solventen-Residuum %.3e bei 1/cond(W) = %.3e",
            pair, solvent, condition,
        )
        return _rejected(pair, (lam_i, lam_j), condition, solvent)

    gap = eigenvalue_gap(H, lam_i, lam_j)
    if gap > EIGENVALUE_MATCH:
        logger.info("Zweig %s abgelehnt: Eigenwerte weichen um %.3e ab", pair, gap)
        return _rejected(pair, (lam_i, lam_j), condition, solvent)

    return HamiltonianBranch(
        pair=pair,
        eigenvalues=(lam_i, lam_j),
        status=BranchStatus.VALID,
        subspace_condition=condition,
        H=H,
        K=pencil.P + H,
        solvent_residual=solvent,
    )


def enumerate_branches(
    pencil: QuadraticPencil,
    roots: RootSet,
    tol_subspace: float = 1e-10,
    tol_residual: float = 1e-9,
) -> BranchSet:
    """Alle 6 Hamilton-Zweige zu einem Wurzelsatz.

    Gültige Zweige tragen bereits das Identitäts-Residuum über
    sample_points() und erfüllen beide Residuenschranken; Zweige, die
    das auch nach dem Nachschärfen nicht tun, werden abgelehnt.

    Raises:
        InconsistentInputs: Eine Wurzel erfüllt die Quartik des Pencils nicht.
    """
    quartic = char_quartic(pencil)
    for z in roots.roots:
        if abs(quartic.evaluate(z)) > tol_residual * quartic.magnitude_scale(z):
            raise InconsistentInputs(f"Wurzel {z!r} erfüllt die Quartik des Pencils nicht")

    rows = [left_null_rows(pencil, z) for z in roots.roots]

    branches: list[HamiltonianBranch] = []
    for i, j in PAIR_ORDER:
        branch = _solve_pair(
            pencil, (i, j), roots[i], roots[j], rows[i], rows[j], tol_subspace, tol_residual,
        )
        if branch.is_valid:
            branch = branch.with_identity_residual(residual_identity(branch, pencil))
            if branch.residual > tol_residual:
                logger.info(
                    "Zweig %s abgelehnt: Identitäts-Residuum %.3e", branch.pair, branch.residual,
                )
                branch = _rejected(
                    branch.pair, branch.eigenvalues, branch.subspace_condition, branch.solvent_residual,
                )
        branches.append(branch)

    result = BranchSet(branches=tuple(branches), roots=roots)
    logger.debug("%d von 6 Zweigen gültig", result.valid_count)
    return result
