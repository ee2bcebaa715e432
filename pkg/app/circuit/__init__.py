"""Schaltungsmodell: Validierung, Szenario-Klassifikation, Normierung.

Öffentliche API:
    RawCircuit, NormalizedCircuit  – Eingabe-Modelle (Pydantic)
    validate, normalize            – Invariantenprüfung und Frequenzskalierung
    load_parameter_file            – JSON-Parameterdatei ("raw" | "normalized")

Typische Verwendung:
    from app.circuit import RawCircuit, normalize, validate

    valid = validate(RawCircuit(l1=1, c1=1, g1=0, l2=1, c2=1, g2=0, m=0.6))
    norm = normalize(valid)
"""

from app.circuit.models import (
    DerivedRates,
    NormalizedCircuit,
    RawCircuit,
    Scenario,
    ScenarioKind,
    ValidatedCircuit,
)
from app.circuit.normalize import (
    canonical_raw,
    classify,
    classify_normalized,
    denormalize_frequency,
    normalize,
    realize,
    validate,
)
from app.circuit.params import ParameterFile, load_parameter_file, parse_parameters

__all__ = [
    # Modelle
    "DerivedRates",
    "NormalizedCircuit",
    "RawCircuit",
    "Scenario",
    "ScenarioKind",
    "ValidatedCircuit",
    # Operationen
    "canonical_raw",
    "classify",
    "classify_normalized",
    "denormalize_frequency",
    "normalize",
    "realize",
    "validate",
    # Parameterdatei
    "ParameterFile",
    "load_parameter_file",
    "parse_parameters",
]
