"""Invarianten-Suiten für `verify`.

Zufallspopulationen stammen aus numpy.random.Generator(PCG64(seed)),
damit Fehler plattformübergreifend reproduzierbar sind:
    l2t, c2t   log-gleichverteilt in [0.1, 10]
    mt         gleichverteilt mit mt² ≤ 0.95·l2t
    g1t, g2t   gleichverteilt in [−1, 1]

Jede Suite liefert ein SuiteResult; verify() sammelt sie, die CLI
meldet eine Zeile pro Suite und Exit-Code 2 bei einem Fehlschlag.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np
from numpy.random import PCG64, Generator

from app.circuit.models import NormalizedCircuit
from app.circuit.normalize import realize
from app.config import Tolerances
from app.exceptions import ResonatorError
from app.logging_config import get_logger
from app.paperforms import Verdict, closed_lossless, compare
from app.report import build_solve_report
from app.solver.pipeline import PipelineResult, SolverPipeline
from app.solver.spectra import find_ep
from app.sweep.export import render_grid_csv
from app.sweep.grid import Axis, GridSpec, SweepScenario, sweep_grid

logger = get_logger("cli")


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.checked} checks, {len(self.failures)} failures"


# ---------------------------------------------------------------------------
# Populationen
# ---------------------------------------------------------------------------

def random_circuits(count: int, seed: int) -> list[NormalizedCircuit]:
    """Reproduzierbare Zufallsschaltungen."""
    rng = Generator(PCG64(seed))
    circuits: list[NormalizedCircuit] = []
    for _ in range(count):
        l2t = float(10.0 ** rng.uniform(-1.0, 1.0))
        c2t = float(10.0 ** rng.uniform(-1.0, 1.0))
        bound = math.sqrt(0.95 * l2t)
        circuits.append(NormalizedCircuit(
            l2t=l2t,
            c2t=c2t,
            g1t=float(rng.uniform(-1.0, 1.0)),
            g2t=float(rng.uniform(-1.0, 1.0)),
            mt=float(rng.uniform(-bound, bound)),
        ))
    return circuits


def lossless(mt: float) -> NormalizedCircuit:
    return NormalizedCircuit(l2t=1.0, c2t=1.0, g1t=0.0, g2t=0.0, mt=mt)


def pt(mt: float, g: float) -> NormalizedCircuit:
    return NormalizedCircuit(l2t=1.0, c2t=1.0, g1t=g, g2t=-g, mt=mt)


def analytic_pt_eps(mt: float) -> tuple[float, float]:
    """Beide EPs des PT-Paars mit l2t = c2t = 1: g² = (2 ∓ 2√u)/u, u = 1 − mt²."""
    u = 1.0 - mt * mt
    return math.sqrt((2 - 2 * math.sqrt(u)) / u), math.sqrt((2 + 2 * math.sqrt(u)) / u)


def _relative(a: complex, b: complex) -> float:
    return abs(a - b) / max(1.0, abs(b))


def matched_gap(found: list[complex], planted: list[complex]) -> float:
    """Größte relative Abweichung nach optimaler Zuordnung (Permutationen)."""
    return min(
        max(_relative(found[p[k]], planted[k]) for k in range(len(planted)))
        for p in itertools.permutations(range(len(found)))
    )


# ---------------------------------------------------------------------------
# Suiten
# ---------------------------------------------------------------------------

def _check_branches(result: PipelineResult, suite: SuiteResult, label: str) -> None:
    scale = result.pencil.scale
    for branch in result.branches.valid():
        assert branch.H is not None
        suite.checked += 1
        H = branch.H
        solvent = float(np.max(np.abs(H @ H + H @ result.pencil.P + result.pencil.Q)))
        if solvent > 1e-9 * scale:
            suite.fail(f"{label} {branch.pair}: Solvent {solvent:.3e}")
        eig = list(np.linalg.eigvals(H))
        if matched_gap(eig, list(branch.eigenvalues)) > 1e-8:
            suite.fail(f"{label} {branch.pair}: Eigenwerte passen nicht zu den Wurzeln")
    if result.branches.valid_count and not result.branches.covers_roots():
        suite.fail(f"{label}: Wurzeln nicht abgedeckt")


def suite_oracle(results: list[PipelineResult]) -> SuiteResult:
    suite = SuiteResult("oracle-equivalence")
    for k, result in enumerate(results):
        _check_branches(result, suite, f"#{k}")
    return suite


def suite_identity(results: list[PipelineResult]) -> SuiteResult:
    suite = SuiteResult("identity-residual")
    for k, result in enumerate(results):
        for branch in result.branches.valid():
            suite.checked += 1
            if not branch.residual <= 1e-9:
                suite.fail(f"#{k} {branch.pair}: Identitäts-Residuum {branch.residual:.3e}")
    return suite


def suite_conjugate(results: list[PipelineResult]) -> SuiteResult:
    suite = SuiteResult("conjugate-symmetry")
    for k, result in enumerate(results):
        roots = list(result.roots.roots)
        mirrored = [-z.conjugate() for z in roots]
        suite.checked += 1
        gap = max(min(abs(m - z) for z in roots) / max(1.0, abs(m)) for m in mirrored)
        if gap > 1e-9:
            suite.fail(f"#{k}: Wurzelsatz nicht unter ω̃ → −conj(ω̃) abgeschlossen ({gap:.3e})")
    return suite


def suite_branch_count(results: list[PipelineResult], pipeline: SolverPipeline) -> SuiteResult:
    suite = SuiteResult("branch-count")
    for mt in np.linspace(0.05, 0.95, 10):
        suite.checked += 1
        count = pipeline.solve(lossless(float(mt))).branches.valid_count
        if count != 4:
            suite.fail(f"verlustfrei mt={mt!r}: {count} statt 4 gültige Zweige")
    full = sum(1 for r in results if r.branches.valid_count == 6)
    suite.checked += 1
    if results and full < math.ceil(0.95 * len(results)):
        suite.fail(f"nur {full} von {len(results)} Zufallsschaltungen mit 6 gültigen Zweigen")
    return suite


def suite_lossless(pipeline: SolverPipeline) -> SuiteResult:
    suite = SuiteResult("lossless-closed-case")
    for mt in [round(0.1 * k, 1) for k in range(1, 10)]:
        result = pipeline.solve(lossless(mt))
        planted = [-1 / math.sqrt(1 - mt), -1 / math.sqrt(1 + mt), 1 / math.sqrt(1 + mt), 1 / math.sqrt(1 - mt)]
        suite.checked += 1
        if max(abs(z - p) for z, p in zip(result.roots.roots, planted)) > 1e-10:
            suite.fail(f"mt={mt}: Wurzeln weichen von ±1/sqrt(1±mt) ab")

        branch = result.branches.branch((2, 3))
        spectrum = result.spectrum((2, 3))
        suite.checked += 1
        if not branch.is_valid or spectrum is None:
            suite.fail(f"mt={mt}: symmetrischer Zweig (2, 3) abgelehnt")
            continue
        H = branch.H
        assert H is not None
        if abs(H[0, 0] - H[1, 1]) > 1e-10 or abs(H[0, 1] - H[1, 0]) > 1e-10:
            suite.fail(f"mt={mt}: H nicht austauschsymmetrisch")
        for v in (spectrum.v_plus, spectrum.v_minus):
            ratio = v[0] / v[1]
            if min(abs(ratio - 1), abs(ratio + 1)) > 1e-9:
                suite.fail(f"mt={mt}: Eigenvektor {v} nicht ∝ [±1, 1]")
    return suite


def suite_pt_ep(pipeline: SolverPipeline, tolerances: Tolerances) -> SuiteResult:
    suite = SuiteResult("pt-exceptional-point")
    expected = math.sqrt(0.625)

    suite.checked += 1
    ep = find_ep(pt(0.6, 0.0), (0.5, 1.0), tolerances.ep_tol, tolerances)
    if abs(ep.g_ep - expected) > 1e-6:
        suite.fail(f"g_ep = {ep.g_ep!r} statt {expected!r}")

    suite.checked += 1
    below = pipeline.solve(pt(0.6, 0.5))
    if max(abs(z.imag) for z in below.roots.roots) > 1e-9:
        suite.fail("g = 0.5: nicht alle Wurzeln reell")

    suite.checked += 1
    above = pipeline.solve(pt(0.6, 1.0))
    positive = sorted((z for z in above.roots.roots if z.real > 0), key=lambda z: z.imag)
    if len(positive) != 2:
        suite.fail("g = 1.0: kein Wurzelpaar mit positivem Realteil")
    else:
        a, b = positive
        if abs(a.real - b.real) > 1e-9 or abs(a.imag + b.imag) > 1e-9 or abs(a.imag) < 0.01:
            suite.fail(f"g = 1.0: Paar {a!r}, {b!r} nicht konjugiert-entgegengesetzt")
    return suite


def suite_trends(tolerances: Tolerances) -> SuiteResult:
    suite = SuiteResult("figure-trends")
    equal = GridSpec(SweepScenario.EQUAL_LOSS, Axis(0.05, 0.9, 20), Axis(0.0, 1.0, 20))
    cells = sweep_grid(equal, tolerances)
    n_g = equal.g_axis.count
    rows = [cells[i * n_g:(i + 1) * n_g] for i in range(equal.m_axis.count)]

    for lower, upper in zip(rows, rows[1:]):
        suite.checked += 1
        if not upper[0].re_mean > lower[0].re_mean:
            suite.fail(f"re_mean bei g=0 nicht steigend zwischen m={lower[0].m!r} und m={upper[0].m!r}")
    for row in rows:
        suite.checked += 1
        if not all(b.im_mean > a.im_mean for a, b in zip(row, row[1:])):
            suite.fail(f"im_mean nicht streng monoton in g bei m={row[0].m!r}")

    pt_grid = GridSpec(SweepScenario.PT, Axis(0.05, 0.9, 20), Axis(0.0, 1.5, 20))
    for cell in sweep_grid(pt_grid, tolerances):
        first, second = analytic_pt_eps(cell.m)
        if cell.g < first - 1e-3:
            suite.checked += 1
            if abs(cell.im_dev_p) > 1e-9:
                suite.fail(f"PT (m={cell.m!r}, g={cell.g!r}) unter EP: im_dev_p = {cell.im_dev_p!r}")
        elif first + 1e-3 < cell.g < second - 1e-3:
            suite.checked += 1
            if abs(cell.re_dev_p) > 1e-9:
                suite.fail(f"PT (m={cell.m!r}, g={cell.g!r}) über EP: re_dev_p = {cell.re_dev_p!r}")
    return suite


def suite_closed_forms(pipeline: SolverPipeline, tolerances: Tolerances) -> SuiteResult:
    suite = SuiteResult("closed-forms")

    decoupled = compare(closed_lossless(lossless(0.0)), pipeline.solve(lossless(0.0)).branches, tolerances.tol_compare)
    for row in decoupled.rows:
        if row.quantity == "omega1" and row.verdict != Verdict.UNDEFINED:
            suite.checked += 1
            if not row.abs_gap <= 1e-10:
                suite.fail(f"entkoppelt: {row.closed_value!r} weicht um {row.abs_gap:.3e} ab")

    coupled = compare(closed_lossless(lossless(0.6)), pipeline.solve(lossless(0.6)).branches, tolerances.tol_compare)
    suite.checked += 1
    documented = [
        r for r in coupled.rows
        if r.quantity == "omega1" and abs(r.closed_value - 1.225807) < 1e-6 and 0.03 <= r.rel_gap <= 0.04
    ]
    if not documented:
        suite.fail("mt=0.6: dokumentierte Abweichung 1.225807 vs 1.185854 nicht im Bericht")
    return suite


def suite_determinism(tolerances: Tolerances) -> SuiteResult:
    suite = SuiteResult("determinism")
    spec = GridSpec(SweepScenario.PT, Axis(0.0, 0.95, 4), Axis(0.0, 1.5, 4))
    sequential = render_grid_csv(spec, sweep_grid(spec, tolerances, workers=1))
    parallel = render_grid_csv(spec, sweep_grid(spec, tolerances, workers=2))
    suite.checked += 1
    if sequential != parallel:
        suite.fail("Sweep-CSV unterscheidet sich zwischen 1 und 2 Workern")

    valid, norm = realize(lossless(0.6), tolerances.tol_scenario)
    pipeline = SolverPipeline(tolerances)
    first = build_solve_report(valid, norm, pipeline.solve(norm), tolerances).to_json()
    second = build_solve_report(valid, norm, pipeline.solve(norm), tolerances).to_json()
    suite.checked += 1
    if first != second:
        suite.fail("solve-Bericht nicht byte-gleich")
    return suite


# ---------------------------------------------------------------------------
# Einstieg
# ---------------------------------------------------------------------------

def _guarded(name: str, run: Callable[[], SuiteResult]) -> SuiteResult:
    try:
        return run()
    except ResonatorError as e:
        logger.error("Suite %s abgebrochen: %s", name, e)
        return SuiteResult(name, checked=1, failures=[f"{type(e).__name__}: {e}"])


def verify(random_count: int = 1000, seed: int = 0, tolerances: Tolerances | None = None) -> list[SuiteResult]:
    """Führt alle Suiten aus.

    Args:
        random_count: Größe der Zufallspopulation (Orakel, Identität, Zweigzahl).
        seed: Startwert für PCG64.
    """
    tol = tolerances or Tolerances()
    pipeline = SolverPipeline(tol)
    circuits = random_circuits(random_count, seed)
    conjugate_circuits = random_circuits(min(random_count, 200), seed + 1)

    results: list[PipelineResult] = []
    failures: list[str] = []
    for k, circuit in enumerate(circuits):
        try:
            results.append(pipeline.solve(circuit))
        except ResonatorError as e:
            failures.append(f"#{k}: {type(e).__name__}: {e}")

    suites = [
        suite_oracle(results),
        suite_identity(results),
        _guarded("conjugate-symmetry", lambda: suite_conjugate([pipeline.solve(c) for c in conjugate_circuits])),
        _guarded("branch-count", lambda: suite_branch_count(results, pipeline)),
        _guarded("lossless-closed-case", lambda: suite_lossless(pipeline)),
        _guarded("pt-exceptional-point", lambda: suite_pt_ep(pipeline, tol)),
        _guarded("figure-trends", lambda: suite_trends(tol)),
        _guarded("closed-forms", lambda: suite_closed_forms(pipeline, tol)),
        _guarded("determinism", lambda: suite_determinism(tol)),
    ]
    if failures:
        suites[0].failures.extend(failures)

    for suite in suites:
        logger.info(suite.line())
    return suites
