"""JSON-Parameterdatei für eine einzelne Schaltung.

Format (genau einer der beiden Schlüssel):
    {"raw": {"l1":…, "c1":…, "g1":…, "l2":…, "c2":…, "g2":…, "m":…}}
    {"normalized": {"l2t":…, "c2t":…, "g1t":…, "g2t":…, "mt":…}}

Normierte Dateien werden über die kanonische Realisierung (L1 = C1 = 1)
durch dieselbe Validierung geschickt wie physikalische.
"""

from __future__ import annotations

import json
from pathlib import Path

from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from app.circuit.models import NormalizedCircuit, RawCircuit, ValidatedCircuit
from app.circuit.normalize import DEFAULT_TOL_SCENARIO, normalize, realize, validate
from app.exceptions import ParameterFileError
from app.logging_config import get_logger

logger = get_logger("circuit")


class NormalizedParams(BaseModel):
    """Normierte Parameter ohne Frequenzskala (die Datei kennt kein ω1)."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    l2t: float
    c2t: float
    g1t: float
    g2t: float
    mt: float


class ParameterFile(BaseModel):
    """Inhalt einer Parameterdatei."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    raw: RawCircuit | None = None
    normalized: NormalizedParams | None = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "ParameterFile":
        if (self.raw is None) == (self.normalized is None):
            raise ValueError("genau einer der Schlüssel 'raw' oder 'normalized' muss gesetzt sein")
        return self


def parse_parameters(
    data: object,
    tol_scenario: float = DEFAULT_TOL_SCENARIO,
) -> tuple[ValidatedCircuit, NormalizedCircuit]:
    """Validiert ein bereits geladenes JSON-Objekt.

    Raises:
        ParameterFileError: Schema verletzt.
        CircuitInputError: Schaltungs-Invarianten verletzt (aus validate()).
    """
    try:
        params = ParameterFile.model_validate(data)
    except ValidationError as e:
        raise ParameterFileError(
            f"Parameterdatei ungültig: {e.error_count()} Fehler",
            details={"errors": e.errors(include_url=False)},
        ) from e

    if params.raw is not None:
        valid = validate(params.raw, tol_scenario)
        return valid, normalize(valid)

    assert params.normalized is not None
    return realize(NormalizedCircuit(**params.normalized.model_dump()), tol_scenario)


def load_parameter_file(
    path: Path,
    tol_scenario: float = DEFAULT_TOL_SCENARIO,
) -> tuple[ValidatedCircuit, NormalizedCircuit]:
    """Liest und validiert eine Parameterdatei.

    OSError (Datei fehlt, keine Rechte) wird unverändert weitergereicht.
    """
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParameterFileError(f"{path}: kein gültiges JSON ({e.msg}, Zeile {e.lineno})") from e

    logger.debug("Parameterdatei geladen: %s", path)
    return parse_parameters(data, tol_scenario)
