"""Validierung, Szenario-Klassifikation und Normierung.

Ablauf für jede Eingabe:
1. validate()   – Invarianten prüfen, abgeleitete Raten, Szenario
2. normalize()  – dimensionslose Parameter (Frequenzskalierung ω̃ = ω/ω1)

Die Szenario-Bedingungen werden auf dimensionslosen Größen geprüft
(τ/ω1 und ω2/ω1), damit die Klassifikation unter physikalischer
Umskalierung (L·s, C/s, G/s) unverändert bleibt.
"""

from __future__ import annotations

import math

from app.circuit.models import (
    DerivedRates,
    NormalizedCircuit,
    RawCircuit,
    Scenario,
    ScenarioKind,
    ValidatedCircuit,
)
from app.exceptions import NonFiniteInput, NonPositiveElement, OvercoupledError
from app.logging_config import get_logger

logger = get_logger("circuit")

# Default für die Szenario-Toleranz (relativ); identisch mit Tolerances.tol_scenario
DEFAULT_TOL_SCENARIO = 1e-12

_POSITIVE_FIELDS = ("l1", "c1", "l2", "c2")


# ---------------------------------------------------------------------------
# Klassifikation
# ---------------------------------------------------------------------------

def classify(
    omega_ratio: float,
    tau1_t: float,
    tau2_t: float,
    tol: float = DEFAULT_TOL_SCENARIO,
    tau1: float | None = None,
    tau2: float | None = None,
) -> Scenario:
    """Ordnet eine Schaltung den Sonderfällen zu.

    Args:
        omega_ratio: ω2/ω1.
        tau1_t: τ1/ω1 (dimensionslos).
        tau2_t: τ2/ω1 (dimensionslos).
        tol: Relative Toleranz (≥ 0).
        tau1, tau2: Abklingraten zum Protokollieren (Default: dimensionslose Werte).

    Returns:
        Scenario mit spezifischstem kind und den drei Bedingungs-Flags.
    """
    freq_match = abs(omega_ratio - 1.0) <= tol * max(1.0, omega_ratio)
    rate_scale = max(1.0, abs(tau1_t), abs(tau2_t))

    equal_loss = freq_match and abs(tau1_t - tau2_t) <= tol * rate_scale
    pt_symmetric = freq_match and abs(tau1_t + tau2_t) <= tol * rate_scale
    lossless = freq_match and abs(tau1_t) <= tol and abs(tau2_t) <= tol

    if lossless:
        kind = ScenarioKind.LOSSLESS
    elif pt_symmetric:
        kind = ScenarioKind.PT_SYMMETRIC
    elif equal_loss:
        kind = ScenarioKind.EQUAL_LOSS
    else:
        kind = ScenarioKind.GENERAL

    return Scenario(
        kind=kind,
        tau1=tau1_t if tau1 is None else tau1,
        tau2=tau2_t if tau2 is None else tau2,
        equal_loss=equal_loss,
        pt_symmetric=pt_symmetric,
        lossless=lossless,
    )


def classify_normalized(norm: NormalizedCircuit, tol: float = DEFAULT_TOL_SCENARIO) -> Scenario:
    """Szenario einer normierten Schaltung (τ in Einheiten von ω1)."""
    return classify(
        omega_ratio=1.0 / math.sqrt(norm.l2t * norm.c2t),
        tau1_t=norm.g1t,
        tau2_t=norm.g2t / norm.c2t,
        tol=tol,
    )


# ---------------------------------------------------------------------------
# Validierung
# ---------------------------------------------------------------------------

def validate(raw: RawCircuit, tol_scenario: float = DEFAULT_TOL_SCENARIO) -> ValidatedCircuit:
    """Prüft die Invarianten eines RawCircuit und hängt Raten + Szenario an.

    Raises:
        NonFiniteInput: NaN/Inf in einem Feld.
        NonPositiveElement: L1, C1, L2 oder C2 ≤ 0.
        OvercoupledError: M² ≥ L1·L2.
    """
    values = raw.model_dump()
    for name, value in values.items():
        if not math.isfinite(value):
            raise NonFiniteInput(name, value)
    for name in _POSITIVE_FIELDS:
        if values[name] <= 0.0:
            raise NonPositiveElement(name, values[name])
    if raw.m * raw.m >= raw.l1 * raw.l2:
        raise OvercoupledError(raw.m, raw.l1, raw.l2)

    rates = DerivedRates(
        omega1=1.0 / math.sqrt(raw.l1 * raw.c1),
        omega2=1.0 / math.sqrt(raw.l2 * raw.c2),
        recip_alpha1=raw.l1 * raw.g1,
        recip_alpha2=raw.l2 * raw.g2,
        recip_kappa1_sq=raw.m * raw.c1,
        recip_kappa2_sq=raw.m * raw.c2,
        recip_gamma1=raw.m * raw.g1,
        recip_gamma2=raw.m * raw.g2,
    )

    tau1 = raw.g1 / raw.c1
    tau2 = raw.g2 / raw.c2
    scenario = classify(
        omega_ratio=rates.omega2 / rates.omega1,
        tau1_t=tau1 / rates.omega1,
        tau2_t=tau2 / rates.omega1,
        tol=tol_scenario,
        tau1=tau1,
        tau2=tau2,
    )
    logger.debug("Schaltung validiert: %s → %s", raw, scenario.kind.value)

    return ValidatedCircuit(raw=raw, rates=rates, scenario=scenario, tol_scenario=tol_scenario)


# ---------------------------------------------------------------------------
# Normierung
# ---------------------------------------------------------------------------

def normalize(valid: ValidatedCircuit) -> NormalizedCircuit:
    """Dimensionslose Parameter nach der Frequenzskalierung ω̃ = ω/ω1."""
    raw = valid.raw
    impedance = math.sqrt(raw.l1 / raw.c1)
    return NormalizedCircuit(
        l2t=raw.l2 / raw.l1,
        c2t=raw.c2 / raw.c1,
        g1t=impedance * raw.g1,
        g2t=impedance * raw.g2,
        mt=raw.m / raw.l1,
        omega1_scale=1.0 / math.sqrt(raw.l1 * raw.c1),
    )


def denormalize_frequency(omega_tilde: complex, norm: NormalizedCircuit) -> complex:
    """Rechnet eine normierte Frequenz in eine physikalische Kreisfrequenz um."""
    return omega_tilde * norm.omega1_scale


def canonical_raw(norm: NormalizedCircuit) -> RawCircuit:
    """Kanonische physikalische Realisierung (L1 = C1 = 1) einer normierten Schaltung."""
    return RawCircuit(
        l1=1.0,
        c1=1.0,
        g1=norm.g1t,
        l2=norm.l2t,
        c2=norm.c2t,
        g2=norm.g2t,
        m=norm.mt,
    )


def realize(norm: NormalizedCircuit, tol_scenario: float = DEFAULT_TOL_SCENARIO) -> tuple[ValidatedCircuit, NormalizedCircuit]:
    """Validiert eine normierte Schaltung über ihre kanonische Realisierung.

    Returns:
        (ValidatedCircuit, erneut normierte Schaltung) – die Felder sind
        bitgleich zur Eingabe, omega1_scale ist 1.
    """
    valid = validate(canonical_raw(norm), tol_scenario)
    return valid, normalize(valid)
