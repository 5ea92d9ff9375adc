"""
Command-line interface for grove-moves.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import __version__
from .board import Direction, build_board
from .config import Settings, load_settings
from .documents import (
    FORMATS,
    ast_from_doc,
    ast_to_doc,
    diff_to_doc,
    dump_document,
    edges_from_doc,
    grove_from_doc,
    grove_to_doc,
    load_document,
    spinseq_from_doc,
    spinseq_to_doc,
)
from .enumeration import (
    enumerate_asts,
    enumerate_groves,
    injectivity_report,
    verify_move_connectivity,
    verify_spin_connectivity,
)
from .exceptions import (
    BoardError,
    BudgetExceededError,
    ConfigurationError,
    DocumentError,
    GroveError,
    MoveRangeError,
    RecurrenceError,
)
from .grove import target_grove, validate_grove
from .recurrence import level_summary
from .reduction import diff_grove, move_path, reduce_with_report, replay_spins
from .render import render_svg, render_text
from .spin import Spin, apply_spin
from .triangle import grove_to_ast

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

# Errors caused by what the user passed in rather than by the mathematics.
INPUT_ERRORS = (
    BoardError,
    BudgetExceededError,
    ConfigurationError,
    DocumentError,
    MoveRangeError,
    RecurrenceError,
)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

_log_handler: Optional[logging.Handler] = None


class GroveArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors as one machine-readable line."""

    def error(self, message):
        print(f"error: usage: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def setup_logging(verbosity: int = 0) -> None:
    """Send log records to stderr: WARNING by default, INFO with -v, DEBUG with -vv."""
    global _log_handler
    root = logging.getLogger()
    if _log_handler is not None:
        root.removeHandler(_log_handler)
    _log_handler = logging.StreamHandler(sys.stderr)
    _log_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(_log_handler)
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    root.setLevel(level)


def _emit(args, data: Dict[str, Any]) -> None:
    _write(args, dump_document(data, args.format))


def _write(args, text: str) -> None:
    output = getattr(args, "output", None)
    if output:
        Path(output).write_text(text, encoding="utf-8")
        print(f"Output written to: {output}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _read_grove(path: str):
    return grove_from_doc(load_document(path), path)


def _parse_pivot(text: str):
    try:
        i, j = (int(part) for part in text.split(","))
    except ValueError:
        raise DocumentError(f"Pivot must be written I,J, got '{text}'")
    return (i, j)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_target(args, settings: Settings) -> int:
    _emit(args, grove_to_doc(target_grove(args.n)))
    return EXIT_OK


def cmd_validate(args, settings: Settings) -> int:
    n, edges = edges_from_doc(load_document(args.input), args.input)
    report = validate_grove(build_board(n), edges)
    _emit(args, report.to_dict())
    return EXIT_OK if report.is_valid else EXIT_FAILED


def cmd_to_ast(args, settings: Settings) -> int:
    _emit(args, ast_to_doc(grove_to_ast(_read_grove(args.input))))
    return EXIT_OK


def cmd_diff(args, settings: Settings) -> int:
    _emit(args, diff_to_doc(diff_grove(_read_grove(args.input))))
    return EXIT_OK


def cmd_apply_spin(args, settings: Settings) -> int:
    g = _read_grove(args.input)
    s = Spin(_parse_pivot(args.pivot), Direction.parse(args.from_dir), Direction.parse(args.to_dir))
    _emit(args, grove_to_doc(apply_spin(g, s)))
    return EXIT_OK


def cmd_reduce(args, settings: Settings) -> int:
    g = _read_grove(args.input)
    result = reduce_with_report(g, clockwise_only=args.clockwise, settings=settings)
    doc = spinseq_to_doc(result.sequence)
    if args.stats:
        doc["stats"] = result.to_dict()
    _emit(args, doc)
    return EXIT_OK


def cmd_replay(args, settings: Settings) -> int:
    g = _read_grove(args.input)
    seq = spinseq_from_doc(load_document(args.sequence), args.sequence)
    if seq.n != g.n:
        raise DocumentError(
            f"Sequence is for size {seq.n} but the grove has size {g.n}", args.sequence
        )
    final = replay_spins(g, seq)
    logger.info("Replay ends at the target grove: %s", final == target_grove(g.n))
    _emit(args, grove_to_doc(final))
    return EXIT_OK


def cmd_enumerate(args, settings: Settings) -> int:
    if args.asts:
        asts = enumerate_asts(args.n, settings)
        data: Dict[str, Any] = {"n": args.n, "count": len(asts)}
        if not args.count_only:
            data["asts"] = [a.to_lists() for a in asts]
    else:
        groves = enumerate_groves(args.n, settings)
        data = {"n": args.n, "count": len(groves)}
        if not args.count_only:
            data["groves"] = [grove_to_doc(g)["edges"] for g in groves]
    _emit(args, data)
    return EXIT_OK


def cmd_verify(args, settings: Settings) -> int:
    if args.spins:
        spin_report = verify_spin_connectivity(args.n, settings)
        data = spin_report.to_dict()
        data["summary"] = spin_report.summary()
        ok = spin_report.connected
    elif args.injectivity:
        inj = injectivity_report(args.n, settings)
        data = inj.to_dict()
        ok = True
    else:
        move_report = verify_move_connectivity(args.n, settings)
        data = move_report.to_dict()
        data["summary"] = move_report.summary()
        ok = move_report.connected
    _emit(args, data)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_move_path(args, settings: Settings) -> int:
    a1 = ast_from_doc(load_document(args.a), args.a)
    a2 = ast_from_doc(load_document(args.b), args.b)
    moves = move_path(a1, a2, clockwise_only=args.clockwise, settings=settings)
    _emit(
        args,
        {
            "n": a1.n,
            "moves": [
                {
                    "row": m.pos.row,
                    "col": m.pos.col,
                    "kind": m.kind.name,
                    "sign": m.pos.sign_name,
                }
                for m in moves
            ],
        },
    )
    return EXIT_OK


def cmd_cube(args, settings: Settings) -> int:
    summary = level_summary(args.level, settings)
    _emit(args, summary.to_dict(include_patterns=not args.count_only))
    return EXIT_OK if summary.all_coefficients_one else EXIT_FAILED


def cmd_render(args, settings: Settings) -> int:
    g = _read_grove(args.input)
    if args.format == "text":
        _write(args, render_text(g, diff=args.diff))
    else:
        _write(args, render_svg(g, diff=args.diff, settings=settings))
    return EXIT_OK


COMMANDS = {
    "target": cmd_target,
    "validate": cmd_validate,
    "to-ast": cmd_to_ast,
    "diff": cmd_diff,
    "apply-spin": cmd_apply_spin,
    "reduce": cmd_reduce,
    "replay": cmd_replay,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "move-path": cmd_move_path,
    "cube": cmd_cube,
    "render": cmd_render,
}


def build_parser() -> GroveArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML settings file (budgets, workers, rendering)")
    common.add_argument(
        "--verbose", "-v", action="count", default=0, help="-v for INFO, -vv for DEBUG logs"
    )
    common.add_argument("--output", "-o", help="Write output to file instead of stdout")

    documents = argparse.ArgumentParser(add_help=False, parents=[common])
    documents.add_argument(
        "--format",
        "-f",
        choices=FORMATS,
        default="json",
        help="Document format: json (default) or yaml",
    )

    parser = GroveArgumentParser(
        prog="grove-moves",
        description=f"grove-moves v{__version__}: groves, triangles and spin moves",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {__version__}",
        help="Show program version and exit",
    )
    sub = parser.add_subparsers(dest="command", help="Commands")

    def add(name: str, help_text: str, parents=None):
        return sub.add_parser(name, help=help_text, parents=parents or [documents])

    p = add("target", "Emit the target grove of size N")
    p.add_argument("-n", type=int, required=True, help="Board size")

    for name, help_text in (
        ("validate", "Check a grove document against the grove axioms"),
        ("to-ast", "Convert a grove to its alternating sign triangle"),
        ("diff", "Emit the red, black and blue edges of a grove"),
    ):
        p = add(name, help_text)
        p.add_argument("-i", "--input", required=True, help="Grove document")

    p = add("apply-spin", "Apply one spin to a grove")
    p.add_argument("-i", "--input", required=True, help="Grove document")
    p.add_argument("--pivot", required=True, help="Pivot vertex as I,J (use --pivot=-1,-1)")
    p.add_argument("--from", dest="from_dir", required=True, help="Direction of the edge to move")
    p.add_argument("--to", dest="to_dir", required=True, help="Direction it moves to")

    p = add("reduce", "Find a spin sequence from a grove to the target grove")
    p.add_argument("-i", "--input", required=True, help="Grove document")
    p.add_argument("--clockwise", action="store_true", help="Use clockwise spins only")
    p.add_argument("--stats", action="store_true", help="Include phase and spin-kind counts")

    p = add("replay", "Replay a spin sequence from a grove")
    p.add_argument("-i", "--input", required=True, help="Grove document")
    p.add_argument("-s", "--sequence", required=True, help="Spin sequence document")

    p = add("enumerate", "List every grove (or triangle) of size N")
    p.add_argument("-n", type=int, required=True, help="Board size")
    p.add_argument("--count-only", action="store_true", help="Only report the count")
    p.add_argument("--asts", action="store_true", help="Enumerate triangles instead")

    p = add("verify", "Brute-force connectivity checks at size N")
    p.add_argument("-n", type=int, required=True, help="Board size")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--moves", action="store_true", help="Triangle move graph (default)")
    mode.add_argument("--spins", action="store_true", help="Grove spin graph")
    mode.add_argument(
        "--injectivity", action="store_true", help="Compare grove and triangle counts"
    )

    p = add("move-path", "Signed moves turning triangle A into triangle B")
    p.add_argument("-a", required=True, help="Triangle document A")
    p.add_argument("-b", required=True, help="Triangle document B")
    p.add_argument("--clockwise", action="store_true", help="Reduce with clockwise spins")

    p = add("cube", "Expand the cube recurrence at the balanced cell of a level")
    p.add_argument("--level", type=int, required=True, help="Level i+j+k")
    p.add_argument("--count-only", action="store_true", help="Omit exponent patterns")

    p = add("render", "Draw a grove as SVG or text", parents=[common])
    p.add_argument("-i", "--input", required=True, help="Grove document")
    p.add_argument("--diff", action="store_true", help="Colour red/blue/black edges")
    p.add_argument(
        "--format", "-f", choices=["svg", "text"], default="svg", help="svg (default) or text"
    )
    return parser


def main(argv: Optional[List[str]] = None) -> None:
    """Main entry point for the CLI."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        sys.exit(EXIT_INPUT)

    setup_logging(args.verbose)
    try:
        settings = load_settings(args.config)
        status = COMMANDS[args.command](args, settings)
    except INPUT_ERRORS as e:
        print(f"error: {e.code}: {e}", file=sys.stderr)
        sys.exit(EXIT_INPUT)
    except GroveError as e:
        print(f"error: {e.code}: {e}", file=sys.stderr)
        sys.exit(EXIT_FAILED)
    except KeyboardInterrupt:
        print("\nOperation cancelled by user", file=sys.stderr)
        sys.exit(EXIT_FAILED)
    sys.exit(status)
