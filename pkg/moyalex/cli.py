"""Command-line interface.

Exit codes: 0 on success, 1 when a planarity verdict is NonPlanarCertificate
or a verify suite has failures, 2 on errors.
"""

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import __version__
from .algebra import RationalFunc, format_poly
from .config import settings
from .diagram import build_diagram, mirror, read_document, reverse, serialize, to_pd
from .diagram.graph import MOYDiagram
from .diagram.regions import build_regions, delta_weight, region_indices
from .errors import MoyalexError
from .normalize import Engine, eval_at_one, link_potential, normalized_delta, state_contributions, symbolic_states
from .normalize.invariant import choose_basepoint
from .rewrite import RewriteTrace, evaluate
from .statesum import bracket_by_determinant, load_weight_table
from .statesum.states import bracket
from .statesum.weights import CornerWeightTable
from .verify import SUITES, planarity_obstruction, run_suite

logger = logging.getLogger("moyalex")

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_ERROR = 2

# (stdout text, exit code) for one input file.
Outcome = tuple[str, int]


def _binding(text: str) -> tuple[str, int]:
    name, sep, value = text.partition("=")
    try:
        if not sep or not name.strip():
            raise ValueError
        return name.strip(), int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NAME=INT, got {text!r}") from None


def _value_text(value) -> str:
    if isinstance(value, RationalFunc):
        if value.is_polynomial:
            return format_poly(value.to_poly())
        return str(value)
    return format_poly(value)


def _t_text(value) -> str:
    return value.to_t_string()


class Context:
    """Options shared by every per-file command."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.colors = dict(getattr(args, "color", None) or [])
        self._table: Optional[CornerWeightTable] = None

    @property
    def table(self) -> CornerWeightTable:
        if self._table is None:
            self._table = load_weight_table(self.args.weights)
        return self._table

    def diagram(self, path: str) -> MOYDiagram:
        d = build_diagram(read_document(Path(path)), self.colors)
        if getattr(self.args, "mirror", False):
            d = mirror(d)
        if getattr(self.args, "reverse", False):
            d = reverse(d)
        return d


# Per-file commands


def cmd_compute(ctx: Context, path: str) -> Outcome:
    d = ctx.diagram(path)
    engine = Engine(ctx.args.engine)
    if engine is Engine.REWRITE:
        trace = RewriteTrace() if ctx.args.trace else None
        value = evaluate(d, ctx.table, trace=trace, max_base_color=2 if ctx.args.reduce_colors else None)
        lines = [f"delta\t{_value_text(value)}", f"t-form\t{_t_text(value)}", "engine\trewrite"]
        if trace is not None:
            lines += ["", *trace.lines()]
        return "\n".join(lines) + "\n", EXIT_OK
    result = normalized_delta(d, ctx.table, engine, include_framing=not ctx.args.no_framing)
    lines = [f"delta\t{_value_text(result.delta)}", f"t-form\t{_t_text(result.delta)}"]
    lines += [f"{name}\t{value}" for name, value in result.factors().items()]
    lines.append(f"well_defined\t{result.well_defined.value}")
    lines.append(f"basepoint\t{result.basepoint}")
    lines.append(f"engine\t{result.engine.value}")
    if result.unit_canonical is not None:
        lines.append(f"unit_canonical\t{format_poly(result.unit_canonical)}")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_bracket(ctx: Context, path: str) -> Outcome:
    d = choose_basepoint(ctx.diagram(path))
    if ctx.args.engine == Engine.DET.value:
        value = bracket_by_determinant(d, table=ctx.table)
    else:
        value = bracket(d, table=ctx.table)
    weight = delta_weight(region_indices(d, build_regions(d)))
    lines = [f"bracket\t{format_poly(value)}", f"delta_weight\t{format_poly(weight)}", f"basepoint\t{d.basepoint.edge}"]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_states(ctx: Context, path: str) -> Outcome:
    if ctx.args.symbolic:
        doc = read_document(Path(path))
        rows = symbolic_states(doc, ctx.table)
        lines = [f"{k}\t{' '.join(s.corners)}\t{s}" for k, s in enumerate(rows)]
        return "\n".join(lines) + "\n", EXIT_OK
    d = ctx.diagram(path)
    rows = state_contributions(d, ctx.table)
    lines = [f"{k}\t{' '.join(state.corners)}\t{_value_text(value)}\t{_t_text(value)}" for k, (state, value) in enumerate(rows)]
    lines.append(f"states\t{len(rows)}")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_planarity(ctx: Context, path: str) -> Outcome:
    verdict = planarity_obstruction(ctx.diagram(path), ctx.table)
    lines = [f"verdict\t{verdict.verdict.value}", f"delta\t{verdict.delta}"]
    if verdict.witness:
        lines.append(f"witness\t{verdict.witness}")
    if verdict.value_at_one is not None:
        lines.append(f"value_at_one\t{verdict.value_at_one}")
    return "\n".join(lines) + "\n", EXIT_VERDICT if verdict.certified else EXIT_OK


def cmd_eval1(ctx: Context, path: str) -> Outcome:
    return f"{eval_at_one(ctx.diagram(path), ctx.table)}\n", EXIT_OK


def cmd_potential(ctx: Context, path: str) -> Outcome:
    value = link_potential(ctx.diagram(path), ctx.table)
    return f"{_value_text(value)}\n", EXIT_OK


def cmd_convert(ctx: Context, path: str) -> Outcome:
    d = ctx.diagram(path)
    if ctx.args.format == "pd":
        return to_pd(d), EXIT_OK
    return serialize(d, canonical=ctx.args.canonical), EXIT_OK


def _guarded(command: Callable[[Context, str], Outcome], ctx: Context, path: str) -> tuple[str, str, int]:
    try:
        text, code = command(ctx, path)
        logger.info("%s: done (exit %d)", path, code)
        return text, "", code
    except (MoyalexError, ValueError, RuntimeError) as exc:
        return "", f"{path}: {type(exc).__name__}: {exc}\n", EXIT_ERROR


def run_files(command: Callable[[Context, str], Outcome], args: argparse.Namespace) -> int:
    """Run a command on every file, in parallel with --jobs; output keeps file order."""
    ctx = Context(args)
    files = args.files
    jobs = args.jobs or settings.jobs
    if jobs > 1 and len(files) > 1:
        ctx.table  # load once before fanning out
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(lambda path: _guarded(command, ctx, path), files))
    else:
        outcomes = [_guarded(command, ctx, path) for path in files]
    for path, (text, error, _) in zip(files, outcomes):
        if len(files) > 1 and text:
            sys.stdout.write(f"== {path}\n")
        sys.stdout.write(text)
        if error:
            sys.stderr.write(error)
    sys.stdout.flush()
    return max(code for _, _, code in outcomes)


def cmd_verify(args: argparse.Namespace) -> int:
    table = load_weight_table(args.weights)
    report = run_suite(args.suite, table, jobs=args.jobs or settings.jobs, seed=args.seed)
    for r in report.failures():
        print(f"FAIL\t{r.id}\t{r.detail}")
    print(report.summary())
    if args.report:
        report.write(args.report)
    if args.junit:
        report.write(args.junit, junit=True)
    return EXIT_OK if report.passed else EXIT_VERDICT


FILE_COMMANDS = {
    "compute": (cmd_compute, "normalized invariant and its factors"),
    "bracket": (cmd_bracket, "raw state sum <D|delta> and |delta|"),
    "states": (cmd_states, "per-state weights"),
    "planarity": (cmd_planarity, "planarity obstruction verdict"),
    "eval1": (cmd_eval1, "value of the invariant at t = 1"),
    "potential": (cmd_potential, "potential function of a 1-colored link"),
    "convert": (cmd_convert, "rewrite a diagram file with bound colors"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moyalex", description="Alexander polynomial of colored MOY graph diagrams.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="INFO logs; twice for DEBUG")
    parser.add_argument("--weights", type=Path, default=None, help="corner weight table (default: MOYALEX_WEIGHT_TABLE or the shipped one)")
    parser.add_argument("--jobs", type=int, default=None, help="parallel workers (files, or checks for verify)")
    sub = parser.add_subparsers(dest="command", required=True)

    files = argparse.ArgumentParser(add_help=False)
    files.add_argument("files", nargs="+", help="diagram JSON files")
    files.add_argument("--color", action="append", type=_binding, metavar="NAME=INT", help="bind a color variable")
    files.add_argument("--mirror", action="store_true", help="use the mirror image")
    files.add_argument("--reverse", action="store_true", help="reverse every edge")

    for name, (_, help_text) in FILE_COMMANDS.items():
        p = sub.add_parser(name, parents=[files], help=help_text)
        if name == "compute":
            p.add_argument("--engine", choices=[e.value for e in Engine], default=Engine.STATESUM.value)
            p.add_argument("--trace", action="store_true", help="print the rewrite steps (rewrite engine)")
            p.add_argument(
                "--reduce-colors", action="store_true", help="reduce planar terms to colors <= 2 first (rewrite engine)"
            )
            p.add_argument("--no-framing", action="store_true", help="leave out the framing factor")
        elif name == "bracket":
            p.add_argument("--engine", choices=[Engine.STATESUM.value, Engine.DET.value], default=Engine.STATESUM.value)
        elif name == "states":
            p.add_argument("--symbolic", action="store_true", help="fit +-t^L [K] over several color bindings")
        elif name == "convert":
            p.add_argument("--format", choices=["json", "pd"], default="json")
            p.add_argument("--canonical", action="store_true", help="sort edges and nodes by id")

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", type=Path, help="write the JSON report here")
    p.add_argument("--junit", type=Path, help="write a JUnit XML report here")
    return parser


def _configure_logging(verbose: int) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, settings.log_level, logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        command, _ = FILE_COMMANDS[args.command]
        return run_files(command, args)
    except (MoyalexError, ValueError, RuntimeError) as exc:
        print(f"moyalex: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
