"""Geschlossene Formeln für Hamilton-Lösungen und Sonderfälle.

Die Formeln werden wörtlich ausgewertet, mit den normierten Größen
eins-zu-eins eingesetzt (L2→l2t, C2→c2t, G1→g1t, G2→g2t, M→mt).  Alle
Wurzeln sind Hauptzweige; die ± der Formeln werden explizit aufgezählt.

Allgemeiner Fall – Reduktion der impliziten Nebenbedingung:
    z = Ω̃2 − jG2/(2C2),  δ = Γ² − Λ²,  Ω̃(Ω̃2)² = z² + δ,  p = z ± Ω̃(Ω̃2)
    ⇒ z = (p − δ/p)/2  und mit x = p²:
    (x² + (2δ − 4Γ²)x + δ²)(x − Γ'²) + 4M²x = 0
Jede der 3 Wurzeln x liefert p = ±√x, also 6 Lösungen.  p = 0 ist nur
für δ = 0 zulässig (dann z = p/2).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from app.circuit.models import NormalizedCircuit, ScenarioKind
from app.circuit.normalize import classify_normalized
from app.exceptions import ReductionFailure, WrongScenario
from app.logging_config import get_logger
from app.solver.roots import companion_roots

logger = get_logger("paperforms")

NAN = complex(math.nan, math.nan)

# Einsetzungs-Konvention, wird in jedem Bericht mitgeführt
SUBSTITUTION_NOTE = (
    "closed forms evaluated verbatim with normalized values substituted one-for-one "
    "(L2->l2t, C2->c2t, G1->g1t, G2->g2t, M->mt); principal square roots"
)

FIRST_FAMILY_UNDEFINED = "first_family_undefined"


# =============================================================================
# Datenstrukturen
# =============================================================================

@dataclass(frozen=True)
class ClosedFormIntermediates:
    """Schaltungsweite Parameter Γ, Γ', Λ und δ = Γ² − Λ²."""

    gamma: complex
    gamma_prime: complex
    lam: complex
    delta: complex


@dataclass(frozen=True)
class GeneralSolution:
    """Eine Lösung des allgemeinen Falls inklusive T2-Parameter.

    omega_of_omega2 = Ω̃(Ω̃2) (Hauptwurzel), omega_pm_of_omega2 = p = Ω̃±(Ω̃2).
    finite = False, wenn eine Division singulär war (Werte dann nan).
    """

    omega1: complex
    omega2: complex
    kappa12: complex
    kappa21: complex
    omega1_prime: complex
    omega2_prime: complex
    kappa12_prime: complex
    kappa21_prime: complex
    omega_of_omega2: complex
    omega_pm_of_omega2: complex
    c0: complex
    c1: complex
    c2: complex
    c3: complex
    finite: bool


@dataclass(frozen=True)
class GeneralSolutions:
    intermediates: ClosedFormIntermediates
    solutions: tuple[GeneralSolution, ...]
    note: str = SUBSTITUTION_NOTE


class SpecialCaseKind(str, Enum):
    IDENTICAL = "equal-loss"
    PT = "pt-symmetric"
    LOSSLESS = "lossless"


@dataclass(frozen=True)
class SpecialCaseSolutions:
    """Lösungen eines Sonderfalls.

    values sind die Ω̃1-Werte, omega2 die zugehörigen Ω̃2.  Kopplungen,
    Ω̃± und Eigenvektoren gibt es nur im verlustfreien Fall.
    finite[k] ist False, wenn Lösung k nicht-endliche Größen enthält.
    """

    kind: SpecialCaseKind
    values: tuple[complex, ...]
    omega2: tuple[complex, ...]
    finite: tuple[bool, ...]
    kappa12: tuple[complex, ...] | None = None
    kappa21: tuple[complex, ...] | None = None
    omega_plus: tuple[complex, ...] | None = None
    omega_minus: tuple[complex, ...] | None = None
    eigenvectors: tuple[tuple[complex, complex], tuple[complex, complex]] | None = None
    flags: tuple[str, ...] = field(default_factory=tuple)
    note: str = SUBSTITUTION_NOTE


# =============================================================================
# Hilfsfunktionen
# =============================================================================

def _clean(z: complex) -> complex:
    return complex(z.real + 0.0, z.imag + 0.0)


def _sqrt(z: complex) -> complex:
    return cmath.sqrt(complex(z.real, z.imag + 0.0))


def _div(num: complex, den: complex) -> complex:
    """Division, die bei Nenner 0 nan liefert statt eine Exception zu werfen."""
    if den == 0:
        return NAN
    return num / den


def _finite(*values: complex) -> bool:
    return all(cmath.isfinite(v) for v in values)


def intermediates(norm: NormalizedCircuit) -> ClosedFormIntermediates:
    """Γ, Λ, Γ' und δ einer normierten Schaltung."""
    L2, C2, G1, G2, M = norm.l2t, norm.c2t, norm.g1t, norm.g2t, norm.mt
    gap = L2 - M * M
    gamma = 0.5 * _sqrt(complex((4 * L2 - G1 * G1 * L2 + G1 * G1 * M * M) / gap))
    lam = 1.0 / (2 * C2) * _sqrt(complex((4 * C2 - G2 * G2 * L2 + G2 * G2 * M * M) / gap))
    gamma_prime = 1j * (G2 / (2 * C2) - G1 / 2)
    return ClosedFormIntermediates(
        gamma=gamma,
        gamma_prime=gamma_prime,
        lam=lam,
        delta=gamma * gamma - lam * lam,
    )


def _require(norm: NormalizedCircuit, kind: ScenarioKind, tol: float) -> None:
    scenario = classify_normalized(norm, tol)
    if not scenario.satisfies(kind):
        raise WrongScenario(kind.value, scenario.kind.value)


# =============================================================================
# Allgemeiner Fall
# =============================================================================

def _general_solution(norm: NormalizedCircuit, inter: ClosedFormIntermediates, p: complex) -> GeneralSolution:
    L2, C2, G1, G2, M = norm.l2t, norm.c2t, norm.g1t, norm.g2t, norm.mt
    delta = inter.delta

    z = p / 2 if delta == 0 else (p - delta / p) / 2
    omega2 = z + 1j * G2 / (2 * C2)
    omega_of_omega2 = _sqrt(z * z + delta)
    # p − z = ±Ω̃(Ω̃2); das Vorzeichen gehört zum gewählten p
    omega1 = 1j * G1 / 2 + (p - z)

    kappa12 = _div(M, -1j * G2 / C2 + omega1 + omega2)
    kappa21 = _div(inter.gamma ** 2 - (omega1 - 1j * G1 / 2) ** 2, kappa12)

    gap = L2 - M * M
    omega1_prime = 1j * G1 - omega1
    omega2_prime = _div(C2 * M, 1j * G2 - C2 * omega1 - C2 * omega2)
    c3 = _div(-1.0, M)
    c2 = _div(-omega2, M) + 1j * (_div(G1, M) + _div(G2, C2 * M))
    c1 = _div(1j * G1 * omega2, M) + _div(L2, M * gap) + _div(G1 * G2, C2 * M)
    c0 = L2 * _div(C2 * omega2 - 1j * G2, C2 * M * gap)
    kappa12_prime = c3 * omega1 ** 3 + c2 * omega1 ** 2 + c1 * omega1 + c0
    kappa21_prime = omega2 - 1j * G2 / C2

    values = (
        omega1, omega2, kappa12, kappa21, omega1_prime, omega2_prime,
        kappa12_prime, kappa21_prime, c0, c1, c2, c3,
    )
    return GeneralSolution(
        omega1=_clean(omega1),
        omega2=_clean(omega2),
        kappa12=kappa12,
        kappa21=kappa21,
        omega1_prime=omega1_prime,
        omega2_prime=omega2_prime,
        kappa12_prime=kappa12_prime,
        kappa21_prime=kappa21_prime,
        omega_of_omega2=omega_of_omega2,
        omega_pm_of_omega2=p,
        c0=c0,
        c1=c1,
        c2=c2,
        c3=c3,
        finite=_finite(*values),
    )


def closed_general(norm: NormalizedCircuit) -> GeneralSolutions:
    """Alle Lösungen der allgemeinen geschlossenen Form.

    Raises:
        ReductionFailure: Γ, Λ oder die Koeffizienten der Kubik sind nicht
            endlich bzw. die Kubik verschwindet identisch.
    """
    inter = intermediates(norm)
    delta, gamma_sq, gp_sq = inter.delta, inter.gamma ** 2, inter.gamma_prime ** 2
    if not _finite(inter.gamma, inter.lam, inter.gamma_prime, delta):
        raise ReductionFailure("Γ, Λ oder Γ' nicht endlich – Nebenbedingung nicht reduzierbar")

    quadratic = np.array([1.0, 2 * delta - 4 * gamma_sq, delta * delta], dtype=complex)
    cubic = np.polymul(quadratic, np.array([1.0, -gp_sq], dtype=complex))
    cubic = np.polyadd(cubic, np.array([0.0, 0.0, 4 * norm.mt ** 2, 0.0], dtype=complex))
    if not np.all(np.isfinite(cubic)) or not np.any(cubic != 0):
        raise ReductionFailure(f"Kubik in p² entartet: {cubic.tolist()}")

    solutions: list[GeneralSolution] = []
    for x in companion_roots(cubic):
        root = _sqrt(complex(x))
        for p in (root, -root):
            if p == 0 and delta != 0:
                logger.debug("p = 0 verworfen (δ ≠ 0)")
                continue
            solutions.append(_general_solution(norm, inter, complex(p)))

    undefined = sum(1 for s in solutions if not s.finite)
    if undefined:
        logger.info("%d geschlossene Lösungen mit nicht-endlichen Größen", undefined)
    return GeneralSolutions(intermediates=inter, solutions=tuple(solutions))


# =============================================================================
# Sonderfälle
# =============================================================================

def _sign_combinations() -> list[tuple[int, int]]:
    """(innen, außen) in fester Reihenfolge: innen +, außen ±; dann innen −, außen ±."""
    return [(inner, outer) for inner in (1, -1) for outer in (1, -1)]


def closed_identical(norm: NormalizedCircuit, tol_scenario: float = 1e-12) -> SpecialCaseSolutions:
    """Identische Frequenzen und Abklingraten: vier Lösungen Ω̃1 = Ω̃2.

    Raises:
        WrongScenario: Schaltung ist nicht equal-loss.
    """
    _require(norm, ScenarioKind.EQUAL_LOSS, tol_scenario)
    gamma = intermediates(norm).gamma
    M, G1 = norm.mt, norm.g1t

    inner_root = _sqrt(-M * M + gamma ** 4)
    values = tuple(
        _clean(outer * _sqrt(gamma ** 2 + inner * inner_root) / math.sqrt(2) + 1j * G1 / 2)
        for inner, outer in _sign_combinations()
    )
    return SpecialCaseSolutions(
        kind=SpecialCaseKind.IDENTICAL,
        values=values,
        omega2=values,
        finite=tuple(_finite(v) for v in values),
    )


def closed_pt(norm: NormalizedCircuit, tol_scenario: float = 1e-12) -> SpecialCaseSolutions:
    """PT-Symmetrie: zwei Lösungen Ω̃1 = −Ω̃2 und vier Lösungen Ω̃1 = Ω̃2 + jG1.

    Bei G1 = 0 ist die erste Familie nicht definiert; dann werden nur die
    vier Lösungen der zweiten Familie geliefert und markiert.

    Raises:
        WrongScenario: Schaltung ist nicht PT-symmetrisch.
    """
    _require(norm, ScenarioKind.PT_SYMMETRIC, tol_scenario)
    gamma = intermediates(norm).gamma
    M, G1 = norm.mt, norm.g1t

    omega1: list[complex] = []
    omega2: list[complex] = []
    flags: list[str] = []

    if G1 == 0:
        logger.warning("G1 = 0: erste PT-Familie nicht definiert, nur zweite Familie")
        flags.append(FIRST_FAMILY_UNDEFINED)
    else:
        radical = _sqrt(M * M - G1 * G1 * gamma ** 2)
        for sign in (1, -1):
            value = _clean(1j * (G1 / 2 + sign * radical / G1))
            omega1.append(value)
            omega2.append(_clean(-value))

    quarter = G1 * G1 / 4
    inner_root = _sqrt(-M * M + (gamma ** 2 + quarter) ** 2)
    for inner, outer in _sign_combinations():
        w2 = _clean(outer * _sqrt(gamma ** 2 - quarter + inner * inner_root) / math.sqrt(2) - 1j * G1 / 2)
        omega2.append(w2)
        omega1.append(_clean(w2 + 1j * G1))

    return SpecialCaseSolutions(
        kind=SpecialCaseKind.PT,
        values=tuple(omega1),
        omega2=tuple(omega2),
        finite=tuple(_finite(a, b) for a, b in zip(omega1, omega2)),
        flags=tuple(flags),
    )


def closed_lossless(norm: NormalizedCircuit, tol_scenario: float = 1e-12) -> SpecialCaseSolutions:
    """Identische verlustfreie Resonatoren: vier Ω̃1 = Ω̃2 mit κ12 = κ21 = M/(2Ω̃1).

    Raises:
        WrongScenario: Schaltung ist nicht verlustfrei.
    """
    _require(norm, ScenarioKind.LOSSLESS, tol_scenario)
    L2, M = norm.l2t, norm.mt

    inner_root = _sqrt(complex(L2 * L2 - M * M * (M * M - L2) ** 2))
    denominator = 2 * (L2 - M * M)
    values = tuple(
        _clean(outer * _sqrt((L2 + inner * inner_root) / denominator))
        for inner, outer in _sign_combinations()
    )
    kappa = tuple(_div(M, 2 * v) for v in values)
    return SpecialCaseSolutions(
        kind=SpecialCaseKind.LOSSLESS,
        values=values,
        omega2=values,
        finite=tuple(_finite(v, k) for v, k in zip(values, kappa)),
        kappa12=kappa,
        kappa21=kappa,
        omega_plus=tuple(v + k for v, k in zip(values, kappa)),
        omega_minus=tuple(v - k for v, k in zip(values, kappa)),
        eigenvectors=((1.0 + 0j, 1.0 + 0j), (-1.0 + 0j, 1.0 + 0j)),
    )


def special_case(norm: NormalizedCircuit, tol_scenario: float = 1e-12) -> SpecialCaseSolutions | None:
    """Sonderfall-Lösungen zum spezifischsten Szenario der Schaltung, sonst None."""
    kind = classify_normalized(norm, tol_scenario).kind
    if kind == ScenarioKind.LOSSLESS:
        return closed_lossless(norm, tol_scenario)
    if kind == ScenarioKind.PT_SYMMETRIC:
        return closed_pt(norm, tol_scenario)
    if kind == ScenarioKind.EQUAL_LOSS:
        return closed_identical(norm, tol_scenario)
    return None
