"""SolveReport: vollständiger JSON-Bericht für eine Schaltung.

Deterministische Serialisierung:
- Schlüssel sortiert, Gleitkommazahlen in kürzester Round-Trip-Darstellung
- komplexe Zahlen als {"re": …, "im": …}
- nicht-endliche Werte als null
"""

from __future__ import annotations

import json
import math
from typing import Any

from pydantic import BaseModel, ConfigDict

from app import __version__
from app.circuit.models import NormalizedCircuit, ValidatedCircuit
from app.circuit.normalize import denormalize_frequency
from app.config import Tolerances
from app.exceptions import ReductionFailure
from app.logging_config import get_logger
from app.paperforms import (
    ComparisonReport,
    GeneralSolutions,
    SpecialCaseSolutions,
    closed_general,
    compare,
    special_case,
)
from app.solver.hamiltonian import HamiltonianBranch
from app.solver.pencil import mode_shape
from app.solver.pipeline import PipelineResult
from app.solver.spectra import Spectrum

logger = get_logger("cli")

BRANCH_TRACKING_NOTE = (
    "sweep tracking: first cell takes the valid pair with both eigenvalues in Re >= 0 and the "
    "largest real sum; later cells take the pair nearest (orientation-free) to the neighbour"
)


# =============================================================================
# Bausteine
# =============================================================================

def _num(x: float) -> float | None:
    value = float(x) + 0.0
    return value if math.isfinite(value) else None


class ComplexValue(BaseModel):
    """Komplexe Zahl; nicht-endliche Teile werden null."""
    model_config = ConfigDict(frozen=True)

    re: float | None
    im: float | None

    @classmethod
    def of(cls, z: complex) -> "ComplexValue":
        z = complex(z)
        return cls(re=_num(z.real), im=_num(z.imag))


class CircuitEcho(BaseModel):
    raw: dict[str, float]
    normalized: dict[str, float]
    scenario: str
    scenario_flags: dict[str, bool]


class OracleReport(BaseModel):
    """Orakel-Wurzeln; physical_roots = ω̃·ω1 in rad/s, modes = [v1, v2] mit M̄·v = 0."""

    coefficients: list[ComplexValue]
    roots: list[ComplexValue]
    residuals: list[float | None]
    clusters: list[list[int]]
    physical_roots: list[ComplexValue] = []
    modes: list[list[ComplexValue]] = []


class SpectrumReport(BaseModel):
    omega_plus: ComplexValue
    omega_minus: ComplexValue
    v_plus: list[ComplexValue]
    v_minus: list[ComplexValue]
    discriminant: ComplexValue
    mean: ComplexValue
    defective: bool


class BranchReport(BaseModel):
    pair: list[int]
    status: str
    eigenvalues: list[ComplexValue]
    subspace_condition: float | None
    solvent_residual: float | None = None
    identity_residual: float | None = None
    hamiltonian: dict[str, ComplexValue] | None = None
    transform: dict[str, ComplexValue] | None = None
    spectrum: SpectrumReport | None = None


class ComparisonRowReport(BaseModel):
    solution: int
    quantity: str
    role: str
    closed_value: ComplexValue
    nearest_numerical_value: ComplexValue
    abs_gap: float | None
    rel_gap: float | None
    verdict: str


class ComparisonSection(BaseModel):
    source: str
    tol_compare: float
    provenance: str
    summary: dict[str, int]
    flags: list[str] = []
    intermediates: dict[str, ComplexValue] = {}
    rows: list[ComparisonRowReport]


class ClosedFormSection(BaseModel):
    general: ComparisonSection | None = None
    general_error: str | None = None
    special_case: ComparisonSection | None = None


class SolveReport(BaseModel):
    """Gesamtbericht; ok = False sobald ein Residuum seine Schranke verletzt."""

    version: str
    circuit: CircuitEcho
    oracle: OracleReport
    branches: list[BranchReport]
    valid_count: int
    paper_closed_forms: ClosedFormSection
    tolerances: dict[str, float]
    conventions: dict[str, str]
    violations: list[str]
    ok: bool

    def to_json(self) -> str:
        return render_json(self.model_dump(mode="json"))


def render_json(data: Any) -> str:
    """Deterministisches JSON (sortierte Schlüssel, LF, abschließender Zeilenumbruch)."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


# =============================================================================
# Aufbau
# =============================================================================

def _spectrum_report(spectrum: Spectrum) -> SpectrumReport:
    return SpectrumReport(
        omega_plus=ComplexValue.of(spectrum.omega_plus),
        omega_minus=ComplexValue.of(spectrum.omega_minus),
        v_plus=[ComplexValue.of(v) for v in spectrum.v_plus],
        v_minus=[ComplexValue.of(v) for v in spectrum.v_minus],
        discriminant=ComplexValue.of(spectrum.discriminant),
        mean=ComplexValue.of(spectrum.mean),
        defective=spectrum.defective,
    )


def _branch_report(branch: HamiltonianBranch, spectrum: Spectrum | None) -> BranchReport:
    report = BranchReport(
        pair=list(branch.pair),
        status=branch.status.value,
        eigenvalues=[ComplexValue.of(z) for z in branch.eigenvalues],
        subspace_condition=_num(branch.subspace_condition),
        solvent_residual=_num(branch.solvent_residual),
    )
    if not branch.is_valid:
        return report
    return report.model_copy(update={
        "identity_residual": _num(branch.residual),
        "hamiltonian": {
            "omega1": ComplexValue.of(branch.omega1),
            "kappa12": ComplexValue.of(branch.kappa12),
            "kappa21": ComplexValue.of(branch.kappa21),
            "omega2": ComplexValue.of(branch.omega2),
        },
        "transform": {
            "omega1_prime": ComplexValue.of(branch.omega1_prime),
            "kappa12_prime": ComplexValue.of(branch.kappa12_prime),
            "kappa21_prime": ComplexValue.of(branch.kappa21_prime),
            "omega2_prime": ComplexValue.of(branch.omega2_prime),
        },
        "spectrum": _spectrum_report(spectrum) if spectrum is not None else None,
    })


def _comparison_section(
    report: ComparisonReport,
    closed: GeneralSolutions | SpecialCaseSolutions,
) -> ComparisonSection:
    flags: list[str] = []
    inter: dict[str, ComplexValue] = {}
    if isinstance(closed, SpecialCaseSolutions):
        flags = list(closed.flags)
    else:
        inter = {
            "Gamma": ComplexValue.of(closed.intermediates.gamma),
            "GammaPrime": ComplexValue.of(closed.intermediates.gamma_prime),
            "Lambda": ComplexValue.of(closed.intermediates.lam),
        }
    return ComparisonSection(
        source=report.source,
        tol_compare=report.tol_compare,
        provenance=report.provenance,
        summary=report.summary,
        flags=flags,
        intermediates=inter,
        rows=[
            ComparisonRowReport(
                solution=row.solution,
                quantity=row.quantity,
                role=row.role.value,
                closed_value=ComplexValue.of(row.closed_value),
                nearest_numerical_value=ComplexValue.of(row.nearest_numerical_value),
                abs_gap=_num(row.abs_gap),
                rel_gap=_num(row.rel_gap),
                verdict=row.verdict.value,
            )
            for row in report.rows
        ],
    )


def closed_form_section(result: PipelineResult, tolerances: Tolerances) -> ClosedFormSection:
    """Formelvergleich; Fehler der geschlossenen Formeln werden vermerkt, nie geworfen."""
    section = ClosedFormSection()
    try:
        general = closed_general(result.circuit)
        section.general = _comparison_section(
            compare(general, result.branches, tolerances.tol_compare), general,
        )
    except ReductionFailure as e:
        logger.warning("Allgemeine geschlossene Form nicht auswertbar: %s", e)
        section.general_error = str(e)

    special = special_case(result.circuit, tolerances.tol_scenario)
    if special is not None:
        section.special_case = _comparison_section(
            compare(special, result.branches, tolerances.tol_compare), special,
        )
    return section


def build_solve_report(
    valid: ValidatedCircuit,
    norm: NormalizedCircuit,
    result: PipelineResult,
    tolerances: Tolerances,
) -> SolveReport:
    """Setzt den Bericht aus Validierung, Pipeline-Ergebnis und Formelvergleich zusammen."""
    scenario = valid.scenario
    return SolveReport(
        version=__version__,
        circuit=CircuitEcho(
            raw=valid.raw.model_dump(),
            normalized=norm.model_dump(),
            scenario=scenario.kind.value,
            scenario_flags={
                "equal_loss": scenario.equal_loss,
                "pt_symmetric": scenario.pt_symmetric,
                "lossless": scenario.lossless,
            },
        ),
        oracle=OracleReport(
            coefficients=[ComplexValue.of(c) for c in result.quartic.coeffs],
            roots=[ComplexValue.of(z) for z in result.roots.roots],
            residuals=[_num(r) for r in result.roots.residuals],
            clusters=[list(c) for c in result.roots.clusters],
            physical_roots=[ComplexValue.of(denormalize_frequency(z, norm)) for z in result.roots.roots],
            modes=[
                [ComplexValue.of(v) for v in mode_shape(result.pencil, z).as_array()]
                for z in result.roots.roots
            ],
        ),
        branches=[
            _branch_report(branch, spectrum)
            for branch, spectrum in zip(result.branches.branches, result.spectra)
        ],
        valid_count=result.branches.valid_count,
        paper_closed_forms=closed_form_section(result, tolerances),
        tolerances=tolerances.model_dump(),
        conventions={
            "frequency": "normalized, omega_tilde = omega / omega1",
            "square_root": "principal branch; Omega+ takes the + sign",
            "decay_sign": "lossy modes have positive imaginary part",
            "branch_tracking": BRANCH_TRACKING_NOTE,
        },
        violations=list(result.violations),
        ok=result.ok,
    )
