"""Geschlossene Formeln und Abgleich mit dem numerischen Pfad.

Öffentliche API:
    closed_general                              – allgemeine Lösung inkl. T2-Parameter
    closed_identical, closed_pt, closed_lossless – Sonderfälle
    special_case                                – Sonderfall passend zum Szenario
    compare                                     – ComparisonReport gegen einen BranchSet
"""

from app.paperforms.closed_forms import (
    FIRST_FAMILY_UNDEFINED,
    SUBSTITUTION_NOTE,
    ClosedFormIntermediates,
    GeneralSolution,
    GeneralSolutions,
    SpecialCaseKind,
    SpecialCaseSolutions,
    closed_general,
    closed_identical,
    closed_lossless,
    closed_pt,
    intermediates,
    special_case,
)
from app.paperforms.compare import ComparisonReport, ComparisonRow, Role, Verdict, compare

__all__ = [
    # Geschlossene Formeln
    "FIRST_FAMILY_UNDEFINED",
    "SUBSTITUTION_NOTE",
    "ClosedFormIntermediates",
    "GeneralSolution",
    "GeneralSolutions",
    "SpecialCaseKind",
    "SpecialCaseSolutions",
    "closed_general",
    "closed_identical",
    "closed_lossless",
    "closed_pt",
    "intermediates",
    "special_case",
    # Vergleich
    "ComparisonReport",
    "ComparisonRow",
    "Role",
    "Verdict",
    "compare",
]
