"""Parameter-Gitter über (M̃, G) mit Zweigverfolgung.

Ablauf:
1. Gitterpunkte zeilenweise (m außen, g innen) aufzählen
2. Jeden Punkt unabhängig auswerten (optional parallel über Prozesse)
3. Sequentieller Nachlauf: verfolgten Zweig je Punkt wählen, GridCell bilden

Die Auswertung liefert für alle 6 Wurzelpaare Mittelwert und Abweichung;
die Auswahl des Zweigs passiert erst im Nachlauf und ist damit
unabhängig von der Anzahl der Worker.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from app.circuit.models import NormalizedCircuit
from app.config import Tolerances
from app.exceptions import GridPointFailure, InvalidGridSpec, NumericalError, ResonatorError
from app.logging_config import get_logger
from app.solver.hamiltonian import PAIR_ORDER
from app.solver.pipeline import SolverPipeline

logger = get_logger("sweep")

# Relative Schranke für das EP-Flag einer Zelle: |Ω̃+ − Ω̃−| ≤ EP_FLAG·(1+|Ω̄|)
EP_FLAG = 1e-8


class SweepScenario(str, Enum):
    """Verlust-/Gewinn-Profil eines Gitters."""
    EQUAL_LOSS = "equal-loss"
    PT = "pt"


# =============================================================================
# Gitter-Spezifikation
# =============================================================================

@dataclass(frozen=True)
class Axis:
    """Gleichmäßige Achse start:stop:count (count = 1 → nur start)."""

    start: float
    stop: float
    count: int

    def __post_init__(self) -> None:
        if self.count < 1:
            raise InvalidGridSpec(f"Achse braucht count ≥ 1, nicht {self.count}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise InvalidGridSpec(f"Achse nicht endlich: {self.start!r}:{self.stop!r}")

    def values(self) -> list[float]:
        if self.count == 1:
            return [float(self.start)]
        return [float(v) for v in np.linspace(self.start, self.stop, self.count)]

    def render(self) -> str:
        return f"{self.start!r}:{self.stop!r}:{self.count}"


def parse_axis(text: str) -> Axis:
    """'start:stop:count' → Axis.

    Raises:
        InvalidGridSpec: Syntax oder Werte ungültig.
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise InvalidGridSpec(f"Achse '{text}' hat nicht die Form start:stop:count")
    try:
        return Axis(start=float(parts[0]), stop=float(parts[1]), count=int(parts[2]))
    except ValueError as e:
        raise InvalidGridSpec(f"Achse '{text}': {e}") from e


@dataclass(frozen=True)
class GridSpec:
    """Sweep über M̃ (m_axis) und Verlust-/Gewinn-Betrag G (g_axis).

    g1t = G, g2t = +G·c2t (equal-loss) bzw. −G·c2t (pt).
    """

    scenario: SweepScenario
    m_axis: Axis
    g_axis: Axis
    l2t: float = 1.0
    c2t: float = 1.0

    def __post_init__(self) -> None:
        for name, value in (("l2t", self.l2t), ("c2t", self.c2t)):
            if not math.isfinite(value) or value <= 0.0:
                raise InvalidGridSpec(f"{name} muss endlich und > 0 sein, ist {value!r}")
        largest = max(abs(m) for m in self.m_axis.values())
        if largest * largest >= self.l2t:
            raise InvalidGridSpec(f"Überkopplung im Gitter: m = {largest!r}, l2t = {self.l2t!r}")

    @property
    def gain_sign(self) -> float:
        return -1.0 if self.scenario == SweepScenario.PT else 1.0

    def circuit_at(self, m: float, g: float) -> NormalizedCircuit:
        return NormalizedCircuit(
            l2t=self.l2t,
            c2t=self.c2t,
            g1t=g,
            g2t=self.gain_sign * g * self.c2t,
            mt=m,
        )

    def points(self) -> list[tuple[float, float]]:
        """Zeilenweise: m außen, g innen (g läuft am schnellsten)."""
        return [(m, g) for m in self.m_axis.values() for g in self.g_axis.values()]


# =============================================================================
# Zellen
# =============================================================================

@dataclass(frozen=True)
class PairCandidate:
    """Mittelwert/Abweichung eines Wurzelpaars an einem Gitterpunkt."""

    branch_id: int
    valid: bool
    omega_plus: complex
    omega_minus: complex
    mean: complex
    deviation: complex


@dataclass(frozen=True)
class CellEvaluation:
    """Rohergebnis eines Gitterpunkts (picklebar für Worker-Prozesse)."""

    m: float
    g: float
    candidates: tuple[PairCandidate, ...] = ()
    error_type: str | None = None
    error: str | None = None


@dataclass(frozen=True)
class GridCell:
    """Eine Zeile der Sweep-CSV.  branch_id = −1 markiert ein Loch."""

    m: float
    g: float
    re_mean: float
    im_mean: float
    re_dev_p: float
    im_dev_p: float
    re_dev_m: float
    im_dev_m: float
    branch_id: int
    ep_flag: bool

    @property
    def is_hole(self) -> bool:
        return self.branch_id < 0

    @classmethod
    def hole(cls, m: float, g: float) -> "GridCell":
        nan = math.nan
        return cls(m, g, nan, nan, nan, nan, nan, nan, -1, False)


def _plus_zero(x: float) -> float:
    # −0.0 → 0.0 für byte-stabile Ausgabe
    return x + 0.0


def evaluate_cell(task: tuple[GridSpec, float, float, Tolerances]) -> CellEvaluation:
    """Wertet einen Gitterpunkt aus (modulweit, damit Worker-Prozesse sie picklen können)."""
    spec, m, g, tolerances = task
    try:
        result = SolverPipeline(tolerances).solve(spec.circuit_at(m, g))
    except ResonatorError as e:
        return CellEvaluation(m=m, g=g, error_type=type(e).__name__, error=str(e))

    candidates: list[PairCandidate] = []
    for branch_id, (branch, spectrum) in enumerate(zip(result.branches.branches, result.spectra)):
        if spectrum is not None:
            candidates.append(PairCandidate(
                branch_id=branch_id,
                valid=True,
                omega_plus=spectrum.omega_plus,
                omega_minus=spectrum.omega_minus,
                mean=spectrum.mean,
                deviation=spectrum.deviation,
            ))
            continue
        # Abgelehntes Paar: Werte direkt aus den Eigenwerten
        lam_i, lam_j = branch.eigenvalues
        mean = (lam_i + lam_j) / 2
        half = (lam_i - lam_j) / 2
        square = half * half
        deviation = cmath.sqrt(complex(square.real, square.imag + 0.0))
        candidates.append(PairCandidate(
            branch_id=branch_id,
            valid=False,
            omega_plus=mean + deviation,
            omega_minus=mean - deviation,
            mean=mean,
            deviation=deviation,
        ))
    return CellEvaluation(m=m, g=g, candidates=tuple(candidates))


# =============================================================================
# Zweigverfolgung
# =============================================================================

def _initial_choice(candidates: tuple[PairCandidate, ...]) -> PairCandidate:
    """Gültiges Paar mit beiden Werten in Re ≥ 0 und größter Realteil-Summe."""
    valid = [c for c in candidates if c.valid] or list(candidates)
    physical = [c for c in valid if c.omega_plus.real >= 0 and c.omega_minus.real >= 0] or valid
    return max(physical, key=lambda c: ((c.omega_plus + c.omega_minus).real, -c.branch_id))


def _track(candidates: tuple[PairCandidate, ...], previous: PairCandidate) -> PairCandidate:
    """Paar mit minimaler orientierungsfreier Abstandssumme zum Vorgänger."""
    a, b = previous.omega_plus, previous.omega_minus

    def cost(c: PairCandidate) -> tuple[float, bool, int]:
        x, y = c.omega_plus, c.omega_minus
        return min(abs(x - a) + abs(y - b), abs(x - b) + abs(y - a)), not c.valid, c.branch_id

    return min(candidates, key=cost)


def _to_cell(m: float, g: float, choice: PairCandidate) -> GridCell:
    mean, dev = choice.mean, choice.deviation
    return GridCell(
        m=m,
        g=g,
        re_mean=_plus_zero(mean.real),
        im_mean=_plus_zero(mean.imag),
        re_dev_p=_plus_zero(dev.real),
        im_dev_p=_plus_zero(dev.imag),
        re_dev_m=_plus_zero(-dev.real),
        im_dev_m=_plus_zero(-dev.imag),
        branch_id=choice.branch_id,
        ep_flag=2 * abs(dev) <= EP_FLAG * (1.0 + abs(mean)),
    )


def track_cells(
    spec: GridSpec,
    evaluations: list[CellEvaluation],
    skip_failures: bool = False,
) -> list[GridCell]:
    """Sequentieller Nachlauf über die zeilenweise geordneten Auswertungen.

    Vorgänger von (i, j) ist (i, j−1), am Zeilenanfang (i−1, 0); ist dieser
    ein Loch, der letzte Punkt ohne Loch.

    Raises:
        GridPointFailure: Auswertung fehlgeschlagen und skip_failures=False.
    """
    n_g = spec.g_axis.count
    chosen: list[PairCandidate | None] = []
    cells: list[GridCell] = []
    last_good: PairCandidate | None = None

    for index, evaluation in enumerate(evaluations):
        if evaluation.error is not None:
            cause = NumericalError(f"{evaluation.error_type}: {evaluation.error}")
            if not skip_failures:
                raise GridPointFailure(evaluation.m, evaluation.g, cause)
            logger.warning("Gitterpunkt übersprungen (m=%r, g=%r): %s", evaluation.m, evaluation.g, cause)
            chosen.append(None)
            cells.append(GridCell.hole(evaluation.m, evaluation.g))
            continue

        row, col = divmod(index, n_g)
        neighbour_index = index - 1 if col > 0 else (row - 1) * n_g
        neighbour = chosen[neighbour_index] if neighbour_index >= 0 else None
        previous = neighbour or last_good

        if previous is None:
            choice = _initial_choice(evaluation.candidates)
        else:
            choice = _track(evaluation.candidates, previous)
            if previous.branch_id != choice.branch_id:
                logger.debug("Zweigwechsel bei (m=%r, g=%r): %d → %d",
                             evaluation.m, evaluation.g, previous.branch_id, choice.branch_id)

        chosen.append(choice)
        last_good = choice
        cells.append(_to_cell(evaluation.m, evaluation.g, choice))

    return cells


# =============================================================================
# Sweep
# =============================================================================

def evaluate_grid(
    spec: GridSpec,
    tolerances: Tolerances | None = None,
    workers: int = 1,
) -> list[CellEvaluation]:
    """Wertet alle Gitterpunkte aus, Reihenfolge zeilenweise unabhängig von workers."""
    tol = tolerances or Tolerances()
    tasks = [(spec, m, g, tol) for m, g in spec.points()]
    if workers > 1 and len(tasks) > 1:
        chunk = max(1, len(tasks) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(evaluate_cell, tasks, chunksize=chunk))
    return [evaluate_cell(task) for task in tasks]


def sweep_grid(
    spec: GridSpec,
    tolerances: Tolerances | None = None,
    workers: int = 1,
    skip_failures: bool = False,
) -> list[GridCell]:
    """GridCells für alle Punkte des Gitters in zeilenweiser Reihenfolge.

    Raises:
        GridPointFailure: ein Punkt scheitert und skip_failures=False.
    """
    logger.info(
        "Sweep %s: %d×%d Punkte, %d Worker",
        spec.scenario.value, spec.m_axis.count, spec.g_axis.count, workers,
    )
    evaluations = evaluate_grid(spec, tolerances, workers)
    cells = track_cells(spec, evaluations, skip_failures)
    holes = sum(1 for c in cells if c.is_hole)
    if holes:
        logger.warning("%d Gitterpunkte als Loch markiert", holes)
    return cells


# Paar-Index → Wurzelindizes, für Export-Kommentare
BRANCH_PAIRS = {i: pair for i, pair in enumerate(PAIR_ORDER)}
