"""Datenmodelle der gekoppelten LRC-Schaltung.

Eingabe-Modelle (RawCircuit, NormalizedCircuit) sind Pydantic-Modelle,
damit sie direkt aus der JSON-Parameterdatei validiert werden können.
Abgeleitete Größen (DerivedRates, Scenario, ValidatedCircuit) sind
unveränderliche Dataclasses.

Leitwerte G statt Widerstände R: der Parallel-Schwingkreis wird
ausschließlich über G = 1/R beschrieben, R taucht nirgends auf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from pydantic import BaseModel, ConfigDict


# =============================================================================
# Eingabe-Parameter
# =============================================================================

class RawCircuit(BaseModel):
    """Die sieben physikalischen Bauteilwerte.

    Einheiten sind frei (SI oder dimensionslos), nur konsistent.
    g1/g2 dürfen negativ sein (Gewinn), m darf negativ sein (Spulenorientierung).
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    l1: float
    c1: float
    g1: float
    l2: float
    c2: float
    g2: float
    m: float


class NormalizedCircuit(BaseModel):
    """Dimensionslose Parameter nach Frequenzskalierung ω̃ = ω/ω1.

    omega1_scale (= ω1) rechnet Ergebnisse in physikalische Frequenzen zurück.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    l2t: float
    c2t: float
    g1t: float
    g2t: float
    mt: float
    omega1_scale: float = 1.0


# =============================================================================
# Abgeleitete Größen
# =============================================================================

def _reciprocal(product: float) -> float:
    """1/x mit inf für x = 0 (entkoppelt bzw. verlustfrei)."""
    return math.inf if product == 0.0 else 1.0 / product


@dataclass(frozen=True)
class DerivedRates:
    """Eigenfrequenzen und Kopplungsraten in reziproker Form.

    Gespeichert werden die Produkte L·G, M·C, M·G – sie bleiben für
    G = 0 oder M = 0 regulär, während α, γ, κ dort singulär werden.
    """

    omega1: float
    omega2: float
    recip_alpha1: float      # L1·G1
    recip_alpha2: float      # L2·G2
    recip_kappa1_sq: float   # M·C1
    recip_kappa2_sq: float   # M·C2
    recip_gamma1: float      # M·G1
    recip_gamma2: float      # M·G2

    @property
    def alpha1(self) -> float:
        """α1 = 1/(L1·G1), inf bei G1 = 0."""
        return _reciprocal(self.recip_alpha1)

    @property
    def alpha2(self) -> float:
        """α2 = 1/(L2·G2), inf bei G2 = 0."""
        return _reciprocal(self.recip_alpha2)

    @property
    def gamma1(self) -> float:
        return _reciprocal(self.recip_gamma1)

    @property
    def gamma2(self) -> float:
        return _reciprocal(self.recip_gamma2)

    @property
    def kappa1(self) -> float:
        """κ1 = 1/sqrt(M·C1); nur für M > 0 reell, sonst nan bzw. inf."""
        if self.recip_kappa1_sq == 0.0:
            return math.inf
        return 1.0 / math.sqrt(self.recip_kappa1_sq) if self.recip_kappa1_sq > 0 else math.nan

    @property
    def kappa2(self) -> float:
        if self.recip_kappa2_sq == 0.0:
            return math.inf
        return 1.0 / math.sqrt(self.recip_kappa2_sq) if self.recip_kappa2_sq > 0 else math.nan


class ScenarioKind(str, Enum):
    """Sonderfälle der Diskussion (identische Verluste, PT, verlustfrei)."""
    GENERAL = "general"
    EQUAL_LOSS = "equal-loss"
    PT_SYMMETRIC = "pt-symmetric"
    LOSSLESS = "lossless"


@dataclass(frozen=True)
class Scenario:
    """Klassifikation einer Schaltung.

    kind ist der spezifischste zutreffende Fall (lossless > pt-symmetric >
    equal-loss > general).  Die drei Flags halten fest, welche Bedingungen
    erfüllt sind – eine verlustfreie Schaltung erfüllt alle drei.
    tau1/tau2 sind die Abklingraten G/C der Eingabe (bei normierten
    Schaltungen in Einheiten von ω1).
    """

    kind: ScenarioKind
    tau1: float
    tau2: float
    equal_loss: bool
    pt_symmetric: bool
    lossless: bool

    def satisfies(self, kind: ScenarioKind) -> bool:
        """True wenn die Bedingungen des angegebenen Szenarios erfüllt sind."""
        if kind == ScenarioKind.GENERAL:
            return True
        return {
            ScenarioKind.EQUAL_LOSS: self.equal_loss,
            ScenarioKind.PT_SYMMETRIC: self.pt_symmetric,
            ScenarioKind.LOSSLESS: self.lossless,
        }[kind]


@dataclass(frozen=True)
class ValidatedCircuit:
    """RawCircuit, dessen Invarianten geprüft sind, plus Ableitungen."""

    raw: RawCircuit
    rates: DerivedRates
    scenario: Scenario
    tol_scenario: float
