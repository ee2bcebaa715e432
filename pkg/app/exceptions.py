"""Spezifische Exceptions für Schaltungs-Eingaben und numerische Pipeline.

Hierarchie:
    ResonatorError (Basis, trägt exit_code)
    ├── CircuitInputError            – ungültige Eingaben (Exit 1)
    │   ├── NonPositiveElement       – L oder C ≤ 0
    │   ├── OvercoupledError         – M² ≥ L1·L2
    │   ├── NonFiniteInput           – NaN/Inf in den Parametern
    │   ├── ParameterFileError       – JSON-Datei unlesbar oder Schema verletzt
    │   ├── InvalidGridSpec          – Sweep-Achsen ungültig
    │   └── WrongScenario            – Sonderfall-Formel für falsches Szenario
    ├── NumericalError               – numerische Pipeline (Exit 1)
    │   ├── SingularLeadingCoefficient
    │   ├── DegenerateLeadingCoefficient
    │   ├── NoConvergence            – Newton-Politur ohne Residuum-Ziel
    │   ├── InconsistentInputs       – Wurzeln passen nicht zum Pencil
    │   ├── RejectedBranch           – Operation auf abgelehntem Zweig
    │   ├── ReductionFailure         – Geschlossene Form nicht reduzierbar
    │   ├── NoSignChange             – EP-Intervall ohne Vorzeichenwechsel
    │   └── BranchTrackingLost       – Zweigverfolgung mehrdeutig
    ├── GridPointFailure             – Fehler an einem Sweep-Gitterpunkt (Exit 1)
    └── VerificationFailure          – verify-Suite fehlgeschlagen (Exit 2)
"""

from __future__ import annotations

from typing import Any


class ResonatorError(Exception):
    """Basisklasse für alle Fehler dieses Pakets."""

    exit_code: int = 1

    def __init__(self, message: str) -> None:
        super().__init__(message)


# =============================================================================
# Eingabefehler
# =============================================================================

class CircuitInputError(ResonatorError):
    """Ungültige Schaltungs- oder Aufrufparameter."""
    pass


class NonPositiveElement(CircuitInputError):
    """Induktivität oder Kapazität ist nicht positiv."""

    def __init__(self, field: str, value: float) -> None:
        self.field = field
        self.value = value
        super().__init__(f"{field} muss > 0 sein, ist aber {value!r}")


class OvercoupledError(CircuitInputError):
    """Gegeninduktivität verletzt M² < L1·L2 (Leitkoeffizient singulär)."""

    def __init__(self, m: float, l1: float, l2: float) -> None:
        self.m = m
        self.l1 = l1
        self.l2 = l2
        super().__init__(
            f"Überkopplung: M² = {m * m!r} ≥ L1·L2 = {l1 * l2!r}"
        )


class NonFiniteInput(CircuitInputError):
    """NaN oder Inf in einem Eingabeparameter."""

    def __init__(self, field: str, value: float) -> None:
        self.field = field
        self.value = value
        super().__init__(f"{field} ist nicht endlich: {value!r}")


class ParameterFileError(CircuitInputError):
    """Parameterdatei nicht lesbar oder Schema verletzt."""

    def __init__(self, message: str, details: dict[str, Any] | None = None) -> None:
        self.details = details or {}
        super().__init__(message)


class InvalidGridSpec(CircuitInputError):
    """Sweep-Spezifikation ungültig (Achsen, Kopplung, Szenario)."""
    pass


class WrongScenario(CircuitInputError):
    """Sonderfall-Formel auf eine Schaltung angewendet, die das Szenario nicht erfüllt."""

    def __init__(self, required: str, actual: str) -> None:
        self.required = required
        self.actual = actual
        super().__init__(f"Szenario '{required}' erforderlich, Schaltung ist '{actual}'")


# =============================================================================
# Numerische Fehler
# =============================================================================

class NumericalError(ResonatorError):
    """Fehler in der numerischen Pipeline."""
    pass


class SingularLeadingCoefficient(NumericalError):
    """B ist singulär – Monisierung unmöglich (für validierte Schaltungen unerreichbar)."""
    pass


class DegenerateLeadingCoefficient(NumericalError):
    """Leitkoeffizient der Quartik verschwindet praktisch."""
    pass


class NoConvergence(NumericalError):
    """Newton-Politur hat das Residuum-Ziel nicht erreicht.

    Enthält die beste gefundene Iterierte und deren Residuum.
    """

    def __init__(self, best: complex, residual: float, target: float) -> None:
        self.best = best
        self.residual = residual
        self.target = target
        super().__init__(
            f"Keine Konvergenz: bestes Residuum {residual:.3e} > Ziel {target:.3e} bei {best!r}"
        )


class InconsistentInputs(NumericalError):
    """Übergebene Wurzeln erfüllen die Quartik des Pencils nicht."""
    pass


class RejectedBranch(NumericalError):
    """Operation benötigt einen gültigen Zweig, der Zweig ist aber abgelehnt."""

    def __init__(self, pair: tuple[int, int]) -> None:
        self.pair = pair
        super().__init__(f"Zweig {pair} ist abgelehnt (entartet)")


class ReductionFailure(NumericalError):
    """Implizite Nebenbedingung lässt sich nicht auf ein Polynom reduzieren."""
    pass


class NoSignChange(NumericalError):
    """Diskriminante wechselt im Intervall nicht das Vorzeichen."""

    def __init__(self, lo: float, hi: float) -> None:
        self.lo = lo
        self.hi = hi
        super().__init__(f"Kein Vorzeichenwechsel der Diskriminante in [{lo!r}, {hi!r}]")


class BranchTrackingLost(NumericalError):
    """Kontinuitätsverfolgung eines Zweigs ist mehrdeutig oder unmöglich."""
    pass


# =============================================================================
# Sweep / Verify
# =============================================================================

class GridPointFailure(ResonatorError):
    """Fehler an einem einzelnen Sweep-Gitterpunkt."""

    def __init__(self, m: float, g: float, cause: Exception) -> None:
        self.m = m
        self.g = g
        self.cause = cause
        super().__init__(f"Gitterpunkt (m={m!r}, g={g!r}) fehlgeschlagen: {cause}")


class VerificationFailure(ResonatorError):
    """Mindestens eine Invarianten-Suite ist fehlgeschlagen."""

    exit_code = 2

    def __init__(self, failures: list[str]) -> None:
        self.failures = failures
        super().__init__(f"{len(failures)} Verifikationsfehler")
