"""EP-Ortskurve g_ep(m) für das PT-Gitter.

Für jedes m der Achse wird find_ep auf einem Startintervall
[0.5·m, 2·m + 0.1] aufgerufen.  Ohne Vorzeichenwechsel wird das Intervall
bis zu 3-mal in beide Richtungen verdoppelt (tenacity); bleibt die Suche
erfolglos, wird der Punkt markiert statt den Lauf abzubrechen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from app.config import Tolerances
from app.exceptions import InvalidGridSpec, NoSignChange
from app.logging_config import get_logger
from app.solver.spectra import EpResult, find_ep
from app.sweep.grid import GridSpec, SweepScenario

logger = get_logger("sweep")

MAX_ATTEMPTS = 4


@dataclass(frozen=True)
class EpLocusPoint:
    """Ein Punkt der Ortskurve; found = False bei NoSignChange (Werte nan)."""

    m: float
    g_ep: float
    bracket_lo: float
    bracket_hi: float
    found: bool
    attempts: int
    heuristic: bool = False


@dataclass(frozen=True)
class EpLocus:
    points: tuple[EpLocusPoint, ...]

    @property
    def failures(self) -> int:
        return sum(1 for p in self.points if not p.found)


def search_interval(m: float, attempt: int) -> tuple[float, float]:
    """Intervall des n-ten Versuchs: [0.5·|m|·2^-(n-1), (2·|m| + 0.1)·2^(n-1)]."""
    scale = 2.0 ** (attempt - 1)
    return 0.5 * abs(m) / scale, (2.0 * abs(m) + 0.1) * scale


def locate(spec: GridSpec, m: float, ep_tol: float, tolerances: Tolerances) -> EpLocusPoint:
    """EP für ein einzelnes m mit Intervall-Erweiterung."""
    base = spec.circuit_at(m, 0.0)
    result: EpResult | None = None
    attempts = 0
    try:
        for attempt in Retrying(
            retry=retry_if_exception_type(NoSignChange),
            stop=stop_after_attempt(MAX_ATTEMPTS),
            reraise=True,
        ):
            with attempt:
                attempts = attempt.retry_state.attempt_number
                interval = search_interval(m, attempts)
                logger.debug("EP-Suche m=%r, Versuch %d: %s", m, attempts, interval)
                result = find_ep(base, interval, ep_tol, tolerances)
    except NoSignChange as e:
        logger.warning("Kein EP für m=%r nach %d Versuchen: %s", m, attempts, e)
        return EpLocusPoint(m, math.nan, math.nan, math.nan, found=False, attempts=attempts)

    assert result is not None
    return EpLocusPoint(
        m=m,
        g_ep=result.g_ep,
        bracket_lo=result.bracket[0],
        bracket_hi=result.bracket[1],
        found=True,
        attempts=attempts,
        heuristic=result.heuristic,
    )


def ep_locus(
    spec: GridSpec,
    ep_tol: float = 1e-8,
    tolerances: Tolerances | None = None,
) -> EpLocus:
    """EP-Ortskurve über die m-Achse, aufsteigend nach m.

    Raises:
        InvalidGridSpec: Gitter ist nicht PT.
    """
    if spec.scenario != SweepScenario.PT:
        raise InvalidGridSpec("EP-Ortskurve nur für das PT-Szenario definiert")
    tol = tolerances or Tolerances()

    points = tuple(locate(spec, m, ep_tol, tol) for m in sorted(spec.m_axis.values()))
    locus = EpLocus(points=points)
    logger.info("EP-Ortskurve: %d Punkte, %d ohne Ergebnis", len(points), locus.failures)
    return locus
