"""Parameter-Sweeps über (M̃, G) und EP-Ortskurven.

Öffentliche API:
    GridSpec, Axis, parse_axis  – Gitter-Spezifikation
    sweep_grid                  – GridCells zeilenweise, optional parallel
    ep_locus                    – g_ep(m) für das PT-Gitter
    render_grid_csv, render_ep_csv – CSV-Ausgabe
"""

from app.sweep.ep_locus import EpLocus, EpLocusPoint, ep_locus, search_interval
from app.sweep.export import EP_HEADER, GRID_HEADER, render_ep_csv, render_grid_csv
from app.sweep.grid import (
    Axis,
    CellEvaluation,
    GridCell,
    GridSpec,
    SweepScenario,
    evaluate_cell,
    parse_axis,
    sweep_grid,
    track_cells,
)

__all__ = [
    # Gitter
    "Axis",
    "CellEvaluation",
    "GridCell",
    "GridSpec",
    "SweepScenario",
    "evaluate_cell",
    "parse_axis",
    "sweep_grid",
    "track_cells",
    # EP
    "EpLocus",
    "EpLocusPoint",
    "ep_locus",
    "search_interval",
    # Export
    "EP_HEADER",
    "GRID_HEADER",
    "render_ep_csv",
    "render_grid_csv",
]
