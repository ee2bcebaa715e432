"""Numerischer Kern: Pencil, Wurzel-Orakel, Hamilton-Zweige, Spektren.

Öffentliche API:
    monic_pencil, char_quartic     – Frequenzbereichs-System und Quartik
    quartic_roots                  – unabhängiges Wurzel-Orakel
    enumerate_branches             – alle 6 Hamilton-Zweige (linke Solventen)
    eigenpairs, find_ep            – Eigenpaare und Exceptional Points
    SolverPipeline, solve_circuit  – alles zusammen für eine Schaltung

Typische Verwendung:
    from app.solver import solve_circuit

    result = solve_circuit(norm)
    for branch, spectrum in zip(result.branches.branches, result.spectra):
        ...
"""

from app.solver.hamiltonian import (
    PAIR_ORDER,
    BranchSet,
    BranchStatus,
    HamiltonianBranch,
    enumerate_branches,
    residual_identity,
    sample_points,
)
from app.solver.pencil import (
    QuadraticPencil,
    QuarticCoefficients,
    VoltageState,
    char_quartic,
    coefficient_matrices,
    mode_shape,
    monic_pencil,
    system_matrix,
)
from app.solver.pipeline import PipelineResult, SolverPipeline, solve_circuit
from app.solver.roots import RootSet, quartic_roots
from app.solver.spectra import EpResult, Spectrum, discriminant, eigenpairs, find_ep, pt_circuit

__all__ = [
    # Pencil
    "QuadraticPencil",
    "QuarticCoefficients",
    "VoltageState",
    "char_quartic",
    "coefficient_matrices",
    "mode_shape",
    "monic_pencil",
    "system_matrix",
    # Orakel
    "RootSet",
    "quartic_roots",
    # Zweige
    "PAIR_ORDER",
    "BranchSet",
    "BranchStatus",
    "HamiltonianBranch",
    "enumerate_branches",
    "residual_identity",
    "sample_points",
    # Spektren
    "EpResult",
    "Spectrum",
    "discriminant",
    "eigenpairs",
    "find_ep",
    "pt_circuit",
    # Pipeline
    "PipelineResult",
    "SolverPipeline",
    "solve_circuit",
]
