"""Eigenfrequenzen, Eigenvektoren und Exceptional Points eines Zweigs.

    Ω̃± = (Ω̃1 + Ω̃2)/2 ± sqrt(κ12κ21 + ((Ω̃1 − Ω̃2)/2)²)     (Hauptzweig)
    v±  = [κ12/(Ω̃± − Ω̃1), 1]

EP-Suche (PT-Paarung g1t = g, g2t = −g·c2t):
1. Start: das Wurzelpaar, dessen Abstand bei g_lo am stärksten schrumpft
2. Scan über 64 Teilintervalle mit Kontinuitätsverfolgung des Paars
3. Bisektion auf Re(Diskriminante) im ersten Teilintervall mit Vorzeichenwechsel
Außerhalb des PT-Szenarios: beschränkte Minimierung von |Diskriminante|
(scipy), Ergebnis als heuristisch markiert.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from app.circuit.models import NormalizedCircuit
from app.circuit.normalize import classify_normalized
from app.config import Tolerances
from app.exceptions import BranchTrackingLost, NoSignChange
from app.logging_config import get_logger
from app.solver.hamiltonian import BranchSet, enumerate_branches
from app.solver.pencil import char_quartic, monic_pencil
from app.solver.roots import RootSet, quartic_roots

logger = get_logger("solver")

# Relative Schranke für zusammenfallende Eigenvektor-Formen
COLLAPSE = 1e-12
# Kollinearität, ab der ein Spektrum als defektiv gilt
DEFECTIVE = 1e-10

SCAN_STEPS = 64


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenpaare eines 2×2-Hamiltonians.

    deviation ist sqrt(Diskriminante); Ω̃± = mean ± deviation.
    """

    omega_plus: complex
    omega_minus: complex
    v_plus: np.ndarray
    v_minus: np.ndarray
    discriminant: complex
    mean: complex
    deviation: complex
    defective: bool

    @property
    def dev_plus(self) -> complex:
        return self.deviation

    @property
    def dev_minus(self) -> complex:
        return -self.deviation


@dataclass(frozen=True)
class EpResult:
    """Ergebnis einer EP-Suche.

    pair: Indizes des verfolgten Wurzelpaars im Wurzelsatz bei g_ep.
    heuristic: True wenn das Ergebnis aus |Diskriminante|-Minimierung stammt.
    """

    circuit: NormalizedCircuit
    g_ep: float
    bracket: tuple[float, float]
    discriminant_at_ep: complex
    pair: tuple[int, int]
    heuristic: bool = False


# ---------------------------------------------------------------------------
# Eigenpaare
# ---------------------------------------------------------------------------

def discriminant(H: np.ndarray) -> complex:
    """κ12κ21 + ((Ω̃1 − Ω̃2)/2)²."""
    half_gap = (complex(H[0, 0]) - complex(H[1, 1])) / 2
    return complex(H[0, 1]) * complex(H[1, 0]) + half_gap * half_gap


def _principal_sqrt(z: complex) -> complex:
    # −0.0 im Imaginärteil würde den Hauptzweig auf die untere Halbebene kippen
    return cmath.sqrt(complex(z.real, z.imag + 0.0))


def _eigenvector(H: np.ndarray, omega: complex, threshold: float) -> np.ndarray | None:
    """Eigenvektor nach der Standardform, sonst nach der Ersatzform; None wenn beide kollabieren."""
    omega1, kappa12 = complex(H[0, 0]), complex(H[0, 1])
    kappa21, omega2 = complex(H[1, 0]), complex(H[1, 1])

    gap1 = omega - omega1
    if abs(gap1) >= threshold:
        return np.array([kappa12 / gap1, 1.0], dtype=complex)
    gap2 = omega - omega2
    if abs(gap2) >= threshold:
        return np.array([1.0, kappa21 / gap2], dtype=complex)
    return None


def eigenpairs(H: np.ndarray) -> Spectrum:
    """Ω̃±, v± und Diskriminante eines 2×2-Hamiltonians (Hauptzweig für Ω̃+)."""
    H = np.asarray(H, dtype=complex)
    mean = (complex(H[0, 0]) + complex(H[1, 1])) / 2
    disc = discriminant(H)
    root = _principal_sqrt(disc)
    omega_plus, omega_minus = mean + root, mean - root

    norm_h = float(np.max(np.abs(H)))
    threshold = COLLAPSE * norm_h
    v_plus = _eigenvector(H, omega_plus, threshold)
    v_minus = _eigenvector(H, omega_minus, threshold)

    collapsed = v_plus is None or v_minus is None
    if collapsed:
        if abs(H[0, 1]) <= threshold and abs(H[1, 0]) <= threshold:
            # Skalare Matrix: jeder Vektor ist Eigenvektor
            v_plus = np.array([1.0, 0.0], dtype=complex)
            v_minus = np.array([0.0, 1.0], dtype=complex)
            collapsed = False
        else:
            jordan = np.array([1.0, 0.0] if abs(H[1, 0]) <= threshold else [0.0, 1.0], dtype=complex)
            v_plus = v_plus if v_plus is not None else jordan
            v_minus = v_minus if v_minus is not None else jordan

    assert v_plus is not None and v_minus is not None
    spread = abs(v_plus[0] * v_minus[1] - v_plus[1] * v_minus[0])
    defective = collapsed or bool(
        spread <= DEFECTIVE * np.linalg.norm(v_plus) * np.linalg.norm(v_minus)
    )

    return Spectrum(
        omega_plus=omega_plus,
        omega_minus=omega_minus,
        v_plus=v_plus,
        v_minus=v_minus,
        discriminant=disc,
        mean=mean,
        deviation=root,
        defective=defective,
    )


# ---------------------------------------------------------------------------
# EP-Suche
# ---------------------------------------------------------------------------

def pt_circuit(base: NormalizedCircuit, g: float) -> NormalizedCircuit:
    """Basis-Schaltung mit PT-Paarung g1t = g, g2t = −g·c2t."""
    return base.model_copy(update={"g1t": g, "g2t": -g * base.c2t})


def _analyze(norm: NormalizedCircuit, tol: Tolerances) -> tuple[RootSet, BranchSet]:
    pencil = monic_pencil(norm)
    roots = quartic_roots(char_quartic(pencil), tol.tol_roots)
    return roots, enumerate_branches(pencil, roots, tol.tol_subspace, tol.tol_residual)


def _pair_cost(a: complex, b: complex, x: complex, y: complex) -> float:
    """Orientierungsfreier Abstand zweier Wurzelpaare."""
    return min(abs(x - a) + abs(y - b), abs(x - b) + abs(y - a))


def _tracked_discriminant(branches: BranchSet, pair: tuple[int, int]) -> complex:
    branch = branches.branch(pair)
    if branch.is_valid:
        return discriminant(branch.H)
    lam_i, lam_j = branches.roots[pair[0]], branches.roots[pair[1]]
    half = (lam_i - lam_j) / 2
    return half * half


def _match_pair(roots: RootSet, previous: tuple[complex, complex]) -> tuple[int, int]:
    """Paar im neuen Wurzelsatz, das dem vorherigen Wertepaar am nächsten liegt.

    Raises:
        BranchTrackingLost: zwei verschiedene Paare sind gleich gut.
    """
    a, b = previous
    scored = sorted(
        ((_pair_cost(a, b, roots[i], roots[j]), (i, j)) for i, j in itertools.combinations(range(4), 2)),
        key=lambda item: item[0],
    )
    (best_cost, best), (second_cost, second) = scored[0], scored[1]
    slack = 1e-9 * (1.0 + abs(a) + abs(b))
    same_values = _pair_cost(roots[best[0]], roots[best[1]], roots[second[0]], roots[second[1]]) <= slack
    if second_cost - best_cost <= slack and not same_values:
        raise BranchTrackingLost(
            f"Zweigverfolgung mehrdeutig: Paare {best} und {second} gleich weit vom Vorgänger"
        )
    return best


def _initial_pair(start: RootSet, ahead: RootSet) -> tuple[int, int]:
    """Paar, dessen Abstand zwischen g_lo und g_lo + h relativ am stärksten schrumpft."""
    # Zuordnung der Wurzeln am Folgepunkt zu denen am Start
    perm = min(
        itertools.permutations(range(4)),
        key=lambda p: sum(abs(ahead[p[k]] - start[k]) for k in range(4)),
    )
    growth: list[tuple[float, tuple[int, int]]] = []
    for i, j in itertools.combinations(range(4), 2):
        d0 = abs(start[i] - start[j])
        d1 = abs(ahead[perm[i]] - ahead[perm[j]])
        growth.append(((d1 - d0) / max(d0, 1e-300), (i, j)))

    lowest = min(g for g, _ in growth)
    candidates = [pair for g, pair in growth if g <= lowest + 1e-9 * max(1.0, abs(lowest))]
    return max(
        candidates,
        key=lambda p: ((start[p[0]] + start[p[1]]).real, (start[p[0]] + start[p[1]]).imag),
    )


def _heuristic_ep(
    base: NormalizedCircuit, lo: float, hi: float, ep_tol: float, tol: Tolerances,
) -> EpResult:
    """|Diskriminante|-Minimierung über alle Wurzelpaare (kein Vorzeichen-Kriterium)."""
    def closest(g: float) -> tuple[float, tuple[int, int], RootSet]:
        roots, _ = _analyze(pt_circuit(base, g), tol)
        value, pair = min(
            (abs((roots[i] - roots[j]) / 2) ** 2, (i, j)) for i, j in itertools.combinations(range(4), 2)
        )
        return value, pair, roots

    result = minimize_scalar(
        lambda g: closest(g)[0], bounds=(lo, hi), method="bounded", options={"xatol": ep_tol},
    )
    g_ep = float(result.x)
    _, pair, roots = closest(g_ep)
    half = (roots[pair[0]] - roots[pair[1]]) / 2
    logger.info("EP heuristisch (kein PT-Szenario): g = %r", g_ep)
    return EpResult(
        circuit=pt_circuit(base, g_ep),
        g_ep=g_ep,
        bracket=(max(lo, g_ep - ep_tol), min(hi, g_ep + ep_tol)),
        discriminant_at_ep=half * half,
        pair=pair,
        heuristic=True,
    )


def find_ep(
    base: NormalizedCircuit,
    interval: tuple[float, float],
    ep_tol: float = 1e-8,
    tolerances: Tolerances | None = None,
) -> EpResult:
    """Lokalisiert den Exceptional Point der PT-Paarung im Intervall.

    Args:
        base: Schaltung, deren g1t/g2t durch die PT-Paarung ersetzt werden.
        interval: [g_lo, g_hi].
        ep_tol: Zielbreite des Bisektionsintervalls.

    Raises:
        NoSignChange: kein Vorzeichenwechsel von Re(Diskriminante) im Intervall.
        BranchTrackingLost: Verfolgung des Wurzelpaars mehrdeutig.
    """
    tol = tolerances or Tolerances()
    lo, hi = float(min(interval)), float(max(interval))

    scenario = classify_normalized(pt_circuit(base, 1.0), tol.tol_scenario)
    if not scenario.pt_symmetric:
        return _heuristic_ep(base, lo, hi, ep_tol, tol)

    roots_lo, branches_lo = _analyze(pt_circuit(base, lo), tol)
    if roots_lo.has_cluster:
        pair = max(roots_lo.clusters, key=lambda p: roots_lo[p[0]].real)
        logger.info("EP am Intervallanfang: g = %r (Doppelwurzel)", lo)
        return EpResult(
            circuit=pt_circuit(base, lo),
            g_ep=lo,
            bracket=(lo, lo),
            discriminant_at_ep=_tracked_discriminant(branches_lo, pair),
            pair=pair,
        )

    step = (hi - lo) / SCAN_STEPS
    roots_next, _ = _analyze(pt_circuit(base, lo + step), tol)
    pair = _initial_pair(roots_lo, roots_next)
    values = (roots_lo[pair[0]], roots_lo[pair[1]])
    disc = _tracked_discriminant(branches_lo, pair)
    logger.debug("EP-Suche: verfolge Paar %s ab g = %r", pair, lo)

    def advance(g: float, previous: tuple[complex, complex]) -> tuple[tuple[int, int], tuple[complex, complex], complex]:
        roots, branches = _analyze(pt_circuit(base, g), tol)
        new_pair = _match_pair(roots, previous)
        return new_pair, (roots[new_pair[0]], roots[new_pair[1]]), _tracked_discriminant(branches, new_pair)

    g_left = lo
    for k in range(1, SCAN_STEPS + 1):
        g_right = hi if k == SCAN_STEPS else lo + k * step
        if disc.real == 0.0:
            return EpResult(pt_circuit(base, g_left), g_left, (g_left, g_left), disc, pair)

        right_pair, right_values, right_disc = advance(g_right, values)
        if right_disc.real == 0.0:
            return EpResult(pt_circuit(base, g_right), g_right, (g_right, g_right), right_disc, right_pair)

        if disc.real * right_disc.real < 0:
            # Bisektion im Teilintervall [g_left, g_right]
            while g_right - g_left > ep_tol:
                g_mid = 0.5 * (g_left + g_right)
                mid_pair, mid_values, mid_disc = advance(g_mid, values)
                if mid_disc.real == 0.0:
                    g_left = g_right = g_mid
                    disc, pair = mid_disc, mid_pair
                    break
                if disc.real * mid_disc.real < 0:
                    g_right = g_mid
                else:
                    g_left, values, disc, pair = g_mid, mid_values, mid_disc, mid_pair

            g_ep = 0.5 * (g_left + g_right)
            ep_pair, _, ep_disc = advance(g_ep, values)
            logger.info("EP gefunden: g = %r in [%r, %r]", g_ep, g_left, g_right)
            return EpResult(pt_circuit(base, g_ep), g_ep, (g_left, g_right), ep_disc, ep_pair)

        g_left, pair, values, disc = g_right, right_pair, right_values, right_disc

    raise NoSignChange(lo, hi)
