"""Kommandozeile der PT-Resonator-Werkzeuge.

Unterbefehle:
    solve   – eine Schaltung, vollständiger JSON-Bericht
    sweep   – Gitter über (m, g), CSV
    ep      – EP-Ortskurve g_ep(m), CSV
    verify  – Invarianten-Suiten (Zufallspopulation + feste Fälle)

Exit-Codes:
    0  Erfolg
    1  Eingabe-/Validierungsfehler, numerischer Fehler, Usage-Fehler
    2  verify: mindestens eine Suite fehlgeschlagen
    3  Datei-I/O

Alle Ausgaben sind eine reine Funktion von argv und Eingabedateien;
Logs gehen ausschließlich nach stderr.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from app import __version__
from app.circuit.params import load_parameter_file
from app.config import Tolerances, get_settings
from app.exceptions import ResonatorError, VerificationFailure
from app.logging_config import get_logger, setup_logging
from app.report import build_solve_report, render_json
from app.solver.pipeline import SolverPipeline
from app.sweep import (
    GridSpec,
    SweepScenario,
    ep_locus,
    parse_axis,
    render_ep_csv,
    render_grid_csv,
    sweep_grid,
)
from app.verify import verify

logger = get_logger("cli")

DEFAULT_M_AXIS = "0:0.95:200"
DEFAULT_G_AXIS = "0:1.5:200"
DEFAULT_RANDOM = 1000

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_IO = 3

_TOLERANCE_FLAGS = {
    "tol_scenario": "--tol-scenario",
    "tol_subspace": "--tol-subspace",
    "tol_residual": "--tol-residual",
    "tol_roots": "--tol-roots",
    "tol_compare": "--tol-compare",
    "ep_tol": "--tol-ep",
}


class _Parser(argparse.ArgumentParser):
    """ArgumentParser mit Exit-Code 1 für Usage-Fehler."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: Fehler: {message}\n")


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", type=Path, default=None, help="Ausgabedatei (Standard: stdout)")
    for field, flag in _TOLERANCE_FLAGS.items():
        parser.add_argument(flag, dest=field, type=float, default=None, metavar="X")


def _add_grid(parser: argparse.ArgumentParser, default_scenario: str) -> None:
    parser.add_argument(
        "--scenario",
        choices=[s.value for s in SweepScenario],
        default=default_scenario,
    )
    parser.add_argument("--m", dest="m_axis", default=DEFAULT_M_AXIS, metavar="a:b:n")
    parser.add_argument("--l2t", type=float, default=1.0, metavar="X")
    parser.add_argument("--c2t", type=float, default=1.0, metavar="X")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pt-resonators", description="Gekoppelte LRC-Resonatoren: Hamilton-Extraktion und EPs")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    solve = sub.add_parser("solve", help="eine Schaltung lösen (JSON-Bericht)")
    solve.add_argument("--params", type=Path, required=True, metavar="FILE")
    _add_common(solve)

    sweep = sub.add_parser("sweep", help="Parameter-Sweep (CSV)")
    _add_grid(sweep, SweepScenario.EQUAL_LOSS.value)
    sweep.add_argument("--g", dest="g_axis", default=DEFAULT_G_AXIS, metavar="a:b:n")
    sweep.add_argument("--skip-failures", action="store_true")
    sweep.add_argument("--workers", type=int, default=None, metavar="N")
    _add_common(sweep)

    ep = sub.add_parser("ep", help="EP-Ortskurve (CSV)")
    _add_grid(ep, SweepScenario.PT.value)
    _add_common(ep)

    check = sub.add_parser("verify", help="Invarianten-Suiten")
    check.add_argument("--random", type=int, default=DEFAULT_RANDOM, metavar="K")
    check.add_argument("--seed", type=int, default=0, metavar="N")
    _add_common(check)

    return parser


# ---------------------------------------------------------------------------
# Unterbefehle
# ---------------------------------------------------------------------------

def _tolerances(args: argparse.Namespace) -> Tolerances:
    return Tolerances().with_overrides(**{field: getattr(args, field) for field in _TOLERANCE_FLAGS})


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with out.open("w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    logger.info("Ausgabe geschrieben: %s", out)


def _grid_spec(args: argparse.Namespace, g_axis: str) -> GridSpec:
    return GridSpec(
        scenario=SweepScenario(args.scenario),
        m_axis=parse_axis(args.m_axis),
        g_axis=parse_axis(g_axis),
        l2t=args.l2t,
        c2t=args.c2t,
    )


def cmd_solve(args: argparse.Namespace, tolerances: Tolerances) -> int:
    valid, norm = load_parameter_file(args.params, tolerances.tol_scenario)
    result = SolverPipeline(tolerances).solve(norm)
    report = build_solve_report(valid, norm, result, tolerances)
    _emit(report.to_json(), args.out)
    if not report.ok:
        logger.warning("Bericht mit Schrankenverletzungen: %s", "; ".join(report.violations))
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace, tolerances: Tolerances) -> int:
    spec = _grid_spec(args, args.g_axis)
    workers = args.workers if args.workers is not None else get_settings().workers
    if workers < 1:
        raise ValueError(f"--workers muss ≥ 1 sein, ist {workers}")
    cells = sweep_grid(spec, tolerances, workers=workers, skip_failures=args.skip_failures)
    _emit(render_grid_csv(spec, cells), args.out)
    return EXIT_OK


def cmd_ep(args: argparse.Namespace, tolerances: Tolerances) -> int:
    # g-Achse ist für die Ortskurve bedeutungslos, wird nur für den Kopf gebraucht
    spec = _grid_spec(args, "0:0:1")
    locus = ep_locus(spec, tolerances.ep_tol, tolerances)
    _emit(render_ep_csv(spec, locus), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, tolerances: Tolerances) -> int:
    if args.random < 0:
        raise ValueError(f"--random muss ≥ 0 sein, ist {args.random}")
    suites = verify(args.random, args.seed, tolerances)
    for suite in suites:
        print(suite.line())
    if args.out is not None:
        summary = {
            "version": __version__,
            "seed": args.seed,
            "random": args.random,
            "generator": "numpy.random.Generator(PCG64(seed))",
            "suites": [
                {"name": s.name, "checked": s.checked, "passed": s.passed, "failures": s.failures}
                for s in suites
            ],
        }
        _emit(render_json(summary), args.out)

    failures = [f"{s.name}: {msg}" for s in suites for msg in s.failures]
    if failures:
        for line in failures:
            print(line, file=sys.stderr)
        raise VerificationFailure(failures)
    return EXIT_OK


_COMMANDS = {
    "solve": cmd_solve,
    "sweep": cmd_sweep,
    "ep": cmd_ep,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# Einstieg
# ---------------------------------------------------------------------------

def run(argv: Sequence[str] | None = None) -> int:
    """Führt die CLI aus und gibt den Exit-Code zurück."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_INPUT

    settings = get_settings()
    setup_logging(log_level=settings.log_level.value, log_dir=settings.log_dir)

    try:
        tolerances = _tolerances(args)
        return _COMMANDS[args.command](args, tolerances)
    except ResonatorError as e:
        print(f"Fehler: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        print(f"Fehler: ungültige Toleranzen ({e.error_count()} Fehler)", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as e:
        print(f"Fehler: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"E/A-Fehler: {e}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
