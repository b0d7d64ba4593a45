"""
Command-line front end.

    python -m treeproj project --input y.txt --d 2 --k 4
    python -m treeproj check --random 42 --d 2 --J 3 --k-list 1:8
    python -m treeproj gta --input y.txt --d 2 --k 4
    python -m treeproj bench --d-list 2,3,4 --J-range 2:6 --k-rule all --output bench.csv
    python -m treeproj scaling

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

import argparse
import sys
from typing import List, Optional

import pandas as pd

from . import __version__
from .baselines import gta_project
from .config import DEFAULT_BENCH_SEED, Settings
from .errors import TreeProjError
from .etp import all_projections, etp_project
from .harness import K_RULES, bench_summary, gaussian_signal, run_bench, run_check, scaling_ratios, signal_rng
from .io import load_signal_file, result_document, table_text, write_document, write_table
from .log import configure_logging, get_logger
from .topology import build_topology
from .types import Signal

logger = get_logger(__name__)

# --- Configuration ---
EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
DEFAULT_CHECK_MAX_K = 12


# --- Argument helpers ---

def parse_int_list(text: str) -> List[int]:
    """
    Parses "1,2,5" and inclusive ranges "1:8" (or "1-8"), in any mix.

    Raises:
        argparse.ArgumentTypeError: on anything that is not an integer or a range.
    """
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        sep = ":" if ":" in part else ("-" if "-" in part.lstrip("-") else None)
        try:
            if sep:
                lo, hi = part.split(sep, 1) if sep == ":" else part.rsplit("-", 1)
                values.extend(range(int(lo), int(hi) + 1))
            else:
                values.append(int(part))
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer list: {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError(f"empty integer list: {text!r}")
    return values


def _emit(text: str, path: Optional[str] = None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _settings(args) -> Settings:
    return Settings.from_env().with_overrides(max_enum=getattr(args, "max_enum", None))


# --- Commands ---

def cmd_project(args) -> int:
    t, values = load_signal_file(args.input, args.d)
    if args.all_k:
        results = all_projections(t, values, args.k)
        table = pd.DataFrame({
            "k": [r.k for r in results],
            "energy": [r.energy for r in results],
            "support": [" ".join(str(i) for i in r.support) for r in results],
        })
        if args.output:
            write_document(result_document(t, results[-1]), args.output)
        _emit(table_text(table))
        return EXIT_OK
    result = etp_project(t, values, args.k)
    text = write_document(result_document(t, result), args.output)
    if not args.output:
        _emit(text)
    logger.info("projected %s onto k=%d: energy %r", t, args.k, result.energy)
    return EXIT_OK


def cmd_gta(args) -> int:
    t, values = load_signal_file(args.input, args.d)
    greedy = gta_project(t, values, args.k)
    exact = etp_project(t, values, args.k)
    doc = result_document(t, greedy, method="gta", etp_energy=exact.energy, gap=exact.energy - greedy.energy)
    text = write_document(doc, args.output)
    if not args.output:
        _emit(text)
    logger.info("greedy energy %r vs exact %r", greedy.energy, exact.energy)
    return EXIT_OK


def _check_signal(args):
    if args.input:
        return load_signal_file(args.input, args.d)
    if args.J is None:
        raise argparse.ArgumentTypeError("--J is required with --random")
    t = build_topology(args.d, args.J)
    return t, gaussian_signal(t, signal_rng(args.random, t.d, t.J)).values


def cmd_check(args) -> int:
    settings = _settings(args)
    t, values = _check_signal(args)
    k_values = args.k_list if args.k_list else ([args.k] if args.k is not None else range(1, min(t.N, DEFAULT_CHECK_MAX_K) + 1))
    report = run_check(t, Signal.of(values, t.N), k_values, settings)
    for row in report.itertuples(index=False):
        line = f"k={row.k} {row.status} energy etp={row.etp_energy!r} oracle={row.oracle_energy!r}"
        if row.status == "FAIL":
            line += f" support etp={row.etp_support} oracle={row.oracle_support} ({row.detail})"
        print(line)
    if args.output:
        write_table(report, args.output)
    failures = int((report["status"] == "FAIL").sum())
    logger.info("check %s: %d of %d cardinalities failed", t, failures, len(report))
    return EXIT_VERIFY_FAILED if failures else EXIT_OK


def cmd_bench(args) -> int:
    d_list = args.d_list or [args.d]
    J_values = args.J_range or ([args.J] if args.J is not None else None)
    if not J_values:
        raise argparse.ArgumentTypeError("--J or --J-range is required")
    k_list = args.k_list or ([args.k] if args.k is not None else None)
    df = run_bench(d_list, J_values, args.k_rule, k_list, args.random, args.reps)
    if args.output:
        write_table(df, args.output)
    else:
        _emit(table_text(df))
    logger.info("bench summary:\n%s", bench_summary(df).to_string(index=False))
    violations = int((~df["within_bound"] | ~df["pass1_within_bound"]).sum())
    if violations:
        logger.error("%d records exceed the operation bound", violations)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_scaling(args) -> int:
    df = scaling_ratios(args.random)
    if args.output:
        write_table(df, args.output)
    _emit(df.to_string(index=False) + "\n")
    return EXIT_VERIFY_FAILED if (df["status"] == "FAIL").any() else EXIT_OK


# --- Parser ---

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treeproj", description="Exact tree projection on d-ary wavelet trees.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, handler, help_text in (("project", cmd_project, "exact projection of a coefficient file"),
                                     ("gta", cmd_gta, "greedy projection, reported against the exact one")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", required=True, metavar="PATH", help="one coefficient per line")
        p.add_argument("--d", type=int, required=True, help="tree order")
        p.add_argument("--k", type=int, required=True, help="support cardinality")
        p.add_argument("--output", metavar="PATH", help="write the result document here instead of stdout")
        if name == "project":
            p.add_argument("--all-k", action="store_true",
                           help="print the optimal energy and support for every k~ <= k from one pass")
        p.set_defaults(handler=handler)

    p = sub.add_parser("check", help="compare ETP with the brute-force oracle")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", metavar="PATH")
    source.add_argument("--random", type=int, metavar="SEED", help="seeded Gaussian signal")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--J", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--k-list", type=parse_int_list, help="e.g. 1:8 or 2,4,6")
    p.add_argument("--max-enum", type=int, help="oracle enumeration ceiling")
    p.add_argument("--output", metavar="PATH", help="write the per-k table (.csv or .xlsx)")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("bench", help="operation counts against 3*d^2*N*k + N")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--d-list", type=parse_int_list)
    p.add_argument("--J", type=int)
    p.add_argument("--J-range", type=parse_int_list, help="e.g. 10:11")
    p.add_argument("--k-rule", choices=sorted(K_RULES), default="all")
    p.add_argument("--k", type=int, help="single k (capped at N); overrides --k-rule")
    p.add_argument("--k-list", type=parse_int_list, help="explicit k values (capped at N)")
    p.add_argument("--random", type=int, default=DEFAULT_BENCH_SEED, metavar="SEED")
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--output", metavar="PATH", help=".csv or .xlsx; CSV on stdout when omitted")
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser("scaling", help="op-count ratios for doubled k and doubled N")
    p.add_argument("--random", type=int, default=DEFAULT_BENCH_SEED, metavar="SEED")
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(handler=cmd_scaling)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        level = "DEBUG" if args.verbose else ("WARNING" if args.quiet else Settings.from_env().log_level)
        configure_logging(level)
        return args.handler(args)
    except (TreeProjError, argparse.ArgumentTypeError, OSError, UnicodeDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
