"""Command-line interface.

Subcommands::

    distspec spectrum --family wheel --params m=4,n=3 --matrix d --both
    distspec check --graph6 'C~' --matrix dl
    distspec search --theorem 6 --max 200
    distspec corpus --file graphs.g6 --matrix d

Global options (``--format``, ``--threads``, ``--tol``, ``--timing``) may
appear before or after the subcommand. Exit status: 0 on success, 1 when
a closed form disagrees with the oracle or a theorem search finds
Diophantine/oracle disagreements, 2 on usage, parse or parameter errors,
3 when a graph is disconnected.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import graphs
from .characterize import THEOREMS, run_theorem
from .errors import DisconnectedGraphError, DistSpecError
from .graph6 import parse_graph6
from .report import FORMATS, corpus_report, spectrum_report, write_report
from .spectra import has_closed_form

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_DISCONNECTED = 3

_GLOBAL_DEFAULTS = {"format": "json", "threads": None, "tol": 1e-8, "timing": False}


class _Parser(argparse.ArgumentParser):
    def exit(self, status=0, message=None):
        if message:
            sys.stderr.write(message)
        raise _Exit(status)


class _Exit(Exception):
    def __init__(self, code):
        self.code = code


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonnegative_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not v >= 0:
        raise argparse.ArgumentTypeError(f"tolerance must be >= 0, got {text}")
    return v


def parse_params(text: str) -> dict[str, int]:
    """``"m=4,n=3"`` -> ``{"m": 4, "n": 3}``."""
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or not key:
            raise argparse.ArgumentTypeError(f"expected name=value, got {item!r}")
        if key in out:
            raise argparse.ArgumentTypeError(f"parameter {key} given twice")
        try:
            out[key] = int(value)
        except ValueError:
            raise argparse.ArgumentTypeError(f"parameter {key} must be an integer, got {value.strip()!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("no parameters given")
    return out


def _global_options() -> argparse.ArgumentParser:
    # Defaults are suppressed so that a value given before the subcommand
    # is not overwritten by the subparser's own default.
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("output options")
    g.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS,
                   help="output format (default: json)")
    g.add_argument("--threads", type=_positive_int, default=argparse.SUPPRESS,
                   help="worker threads for sweeps (default: all cores)")
    g.add_argument("--tol", type=_nonnegative_float, default=argparse.SUPPRESS,
                   help="closed-form vs oracle tolerance (default: 1e-8)")
    g.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                   help="include wall-clock time in theorem reports")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_options()
    parser = _Parser(prog="distspec", parents=[common],
                     description="Exact distance and distance-Laplacian spectra of wheel-like graphs.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    sp = sub.add_parser("spectrum", parents=[common], help="spectrum of a family graph")
    sp.add_argument("--family", required=True, choices=sorted(graphs.FAMILIES))
    sp.add_argument("--params", required=True, type=parse_params, help="e.g. m=4,n=3 or a=2,m=2,n=3 or p=1,n=3")
    sp.add_argument("--matrix", choices=sorted(graphs.MATRIX_KINDS), default="d")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--closed-form", dest="mode", action="store_const", const="closed-form",
                      help="closed-form spectrum with exact certification")
    mode.add_argument("--oracle", dest="mode", action="store_const", const="oracle",
                      help="exact char poly and Jacobi eigenvalues only")
    mode.add_argument("--both", dest="mode", action="store_const", const="both",
                      help="compare closed form and oracle (default when a closed form exists)")

    cp = sub.add_parser("check", parents=[common], help="certify a graph6 graph")
    cp.add_argument("--graph6", required=True, help="graph6 string")
    cp.add_argument("--matrix", choices=sorted(graphs.MATRIX_KINDS), default="d")

    se = sub.add_parser("search", parents=[common], help="reproduce a characterization theorem")
    se.add_argument("--theorem", type=int, required=True, choices=sorted(THEOREMS))
    se.add_argument("--max", dest="max_value", type=_positive_int, default=None,
                    help="Diophantine sweep bound on the leading parameter")
    se.add_argument("--oracle-max", type=_positive_int, default=None,
                    help="oracle box bound on the leading parameter")

    co = sub.add_parser("corpus", parents=[common], help="certify every graph in a graph6 file")
    co.add_argument("--file", required=True, help="graph6 file, one graph per line ('-' for stdin)")
    co.add_argument("--matrix", choices=sorted(graphs.MATRIX_KINDS), default="d")
    return parser


def _emit(data: bytes):
    sys.stdout.write(data.decode("utf-8"))
    sys.stdout.flush()


def _cmd_spectrum(args) -> int:
    g = graphs.build_family(args.family, **args.params)
    mode = args.mode or ("both" if has_closed_form(args.family, args.matrix) else "oracle")
    r = spectrum_report(g, args.matrix, mode=mode, tol=args.tol)
    _emit(write_report(r, args.format))
    if r.agreement is False:
        for d in r.diagnostics:
            print(f"distspec: mismatch: {d}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _cmd_check(args) -> int:
    g = parse_graph6(args.graph6)
    r = spectrum_report(g, args.matrix, mode="oracle", tol=args.tol, descriptor=args.graph6)
    _emit(write_report(r, args.format))
    return EXIT_OK


def _cmd_search(args) -> int:
    r = run_theorem(args.theorem, args.max_value, args.oracle_max, threads=args.threads)
    _emit(write_report(r, args.format, timing=args.timing))
    if not r.agreement:
        print(f"distspec: Diophantine and oracle verdicts differ on {r.disagreements}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _cmd_corpus(args) -> int:
    if args.file == "-":
        r = corpus_report(sys.stdin, args.matrix)
    else:
        try:
            with open(args.file, encoding="ascii", errors="replace") as fh:
                r = corpus_report(fh, args.matrix)
        except OSError as exc:
            print(f"distspec: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
            return EXIT_USAGE
    _emit(write_report(r, args.format))
    kinds = {x["error_kind"] for x in r.records}
    for x in r.records:
        if x["error"]:
            print(f"distspec: line {x['line']}: {x['error']}", file=sys.stderr)
    if "parse" in kinds:
        return EXIT_USAGE
    if "disconnected" in kinds:
        return EXIT_DISCONNECTED
    return EXIT_OK


COMMANDS = {"spectrum": _cmd_spectrum, "check": _cmd_check, "search": _cmd_search, "corpus": _cmd_corpus}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _Exit as exc:
        return exc.code
    for key, value in _GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    if args.threads is None:
        args.threads = os.cpu_count() or 1
    try:
        return COMMANDS[args.command](args)
    except DisconnectedGraphError as exc:
        print(f"distspec: {exc}", file=sys.stderr)
        return EXIT_DISCONNECTED
    except DistSpecError as exc:
        print(f"distspec: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
