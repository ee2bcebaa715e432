"""CSV-Ausgabe für Sweep und EP-Ortskurve.

UTF-8, LF-Zeilenenden, Kommentarzeilen mit '#' vor dem Header.
Gleitkommazahlen in kürzester Round-Trip-Darstellung (repr), Flags als 0/1.
Die Kommentare enthalten nur Spezifikation und Konventionen, keine
Zeitstempel, damit gleiche Eingaben byte-gleiche Dateien ergeben.
"""

from __future__ import annotations

import csv
import io

from app.sweep.ep_locus import EpLocus
from app.sweep.grid import BRANCH_PAIRS, GridCell, GridSpec

GRID_HEADER = (
    "m", "g", "re_mean", "im_mean", "re_dev_p", "im_dev_p",
    "re_dev_m", "im_dev_m", "branch_id", "ep_flag",
)
EP_HEADER = ("m", "g_ep", "bracket_lo", "bracket_hi")


def _spec_comments(spec: GridSpec) -> list[str]:
    sign = "-" if spec.gain_sign < 0 else "+"
    return [
        f"# scenario={spec.scenario.value} m={spec.m_axis.render()} g={spec.g_axis.render()}",
        f"# l2t={spec.l2t!r} c2t={spec.c2t!r} g1t=G g2t={sign}G*c2t",
    ]


def _render(rows: list[list[object]], header: tuple[str, ...], comments: list[str]) -> str:
    buffer = io.StringIO()
    for line in comments:
        buffer.write(line + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def render_grid_csv(spec: GridSpec, cells: list[GridCell]) -> str:
    """Sweep-CSV als Text."""
    pairs = " ".join(f"{i}={pair[0]}{pair[1]}" for i, pair in BRANCH_PAIRS.items())
    comments = _spec_comments(spec) + [
        "# order: row-major, m outer, g fastest",
        "# sign convention: decaying modes have positive imaginary part (+j*omega kernel); raw values",
        "# mean = (W+ + W-)/2, dev_p = W+ - mean, dev_m = W- - mean; W+ uses the principal square root",
        f"# branch_id = root pair index into sorted roots: {pairs}; -1 marks a skipped point",
        "# tracking: first cell = valid pair in Re >= 0 with largest real sum, then nearest pair to the neighbour",
    ]
    rows = [
        [
            repr(c.m), repr(c.g), repr(c.re_mean), repr(c.im_mean),
            repr(c.re_dev_p), repr(c.im_dev_p), repr(c.re_dev_m), repr(c.im_dev_m),
            c.branch_id, int(c.ep_flag),
        ]
        for c in cells
    ]
    return _render(rows, GRID_HEADER, comments)


def render_ep_csv(spec: GridSpec, locus: EpLocus) -> str:
    """EP-CSV als Text (nan für Punkte ohne Ergebnis)."""
    comments = _spec_comments(spec) + [
        "# g_ep located by bisection on Re(discriminant) of the tracked pair; nan = no sign change",
    ]
    if any(p.heuristic for p in locus.points):
        comments.append("# heuristic: frequencies not matched, |discriminant| minimisation used")
    rows = [
        [repr(p.m), repr(p.g_ep), repr(p.bracket_lo), repr(p.bracket_hi)]
        for p in locus.points
    ]
    return _render(rows, EP_HEADER, comments)
