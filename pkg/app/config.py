"""Konfigurationsmanagement mit Pydantic Settings.

Zwei Ebenen:
- Settings:   Laufzeit-Umgebung (Log-Level, Log-Verzeichnis, Worker-Anzahl),
              geladen aus ENV-Variablen mit Präfix PTRES_ und optional .env.
- Tolerances: Numerische Toleranzen der Pipeline.  Kommen NICHT aus der
              Umgebung, sondern nur aus Defaults und CLI-Flags, damit ein
              Ergebnis ausschließlich von argv und Eingabedateien abhängt.
"""

from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class LogLevel(str, Enum):
    """Erlaubte Log-Level."""
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"


class Settings(BaseSettings):
    """Laufzeit-Konfiguration des Werkzeugs.

    Keines der Felder beeinflusst ein numerisches Ergebnis.
    """

    model_config = SettingsConfigDict(
        env_prefix="PTRES_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # --- Logging ---
    log_level: LogLevel = Field(
        default=LogLevel.WARNING,
        description="Log-Level (stderr); stdout bleibt für JSON/CSV reserviert",
    )
    log_dir: Optional[Path] = Field(
        default=None,
        description="Verzeichnis für rotierende Log-Dateien (None = nur stderr)",
    )

    # --- Parallelisierung ---
    workers: int = Field(
        default=1,
        ge=1,
        description="Standard-Anzahl Prozesse für Parameter-Sweeps",
    )


class Tolerances(BaseModel):
    """Numerische Toleranzen der gesamten Pipeline.

    Alle Werte müssen positiv sein.  Überschreiben per CLI
    (--tol-scenario, --tol-subspace, ...) über with_overrides().
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    tol_scenario: float = Field(default=1e-12, gt=0.0, description="Szenario-Klassifikation (relativ)")
    tol_subspace: float = Field(default=1e-10, gt=0.0, description="Reziproke Kondition von W (Zweig-Ablehnung)")
    tol_residual: float = Field(default=1e-9, gt=0.0, description="Solventen- und Identitäts-Residuum")
    tol_roots: float = Field(default=1e-13, gt=0.0, description="Residuum-Ziel der Newton-Politur")
    tol_compare: float = Field(default=1e-6, gt=0.0, description="Relativer Abstand für 'match' im Formelvergleich")
    ep_tol: float = Field(default=1e-8, gt=0.0, description="Breite des EP-Bisektionsintervalls")

    def with_overrides(self, **overrides: float | None) -> "Tolerances":
        """Gibt eine Kopie mit den gesetzten (nicht-None) Werten zurück.

        Läuft erneut durch die Validierung, damit auch CLI-Werte > 0 sein müssen.
        """
        values = self.model_dump()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return Tolerances(**values)


# Singleton-Pattern: wird einmalig beim ersten Zugriff erstellt
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Gibt die Settings-Instanz zurück (Lazy Singleton)."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings
