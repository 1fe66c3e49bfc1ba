"""
Argument parser and translation of parsed flags into a RunConfig.
"""

import argparse
from typing import Sequence

from config import Config
from .run_config import FORMATS, METHODS, RunConfig

# Subcommands that read an --in document.
INPUT_COMMANDS = {
    "meet": "projection family: a list, {\"projections\": [...]} or {\"P\", \"Q\"}",
    "join": "projection family",
    "glb-check": "projection family",
    "norm-check": "{\"projections\": [...], \"R\": matrix}",
    "sep-witness": "{\"P\": matrix, \"Q\": matrix}",
    "gap": "{\"P\": matrix, \"Q\": matrix}",
    "decreasing": "projection family",
    "increasing": "projection family",
    "ee-check": "{\"S\": matrix, \"P\": matrix, \"s\": real, \"t\": real}",
    "pullback": "{\"morphism\", \"q\", \"P\", optional \"R\"}",
    "interpolate": "{\"morphism\", \"ps\": [...], \"qs\": [...]}",
}


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=FORMATS, default="json", help="report format")
    p.add_argument("--tol-eig", type=float, help="eigenvalue clustering radius")
    p.add_argument("--tol-order", type=float, help="order comparison tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toolkit",
        description="Order structure of projections in finite-dimensional C*-algebras.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    for name, doc in INPUT_COMMANDS.items():
        p = sub.add_parser(name, help=doc)
        p.add_argument("--in", dest="input_path", required=True, help=doc)
        if name == "decreasing":
            p.add_argument("--method", choices=METHODS, default="recursive")
        _common(p)

    p = sub.add_parser("calkin-demo", help="essential quantities of a block-sequence family")
    p.add_argument("--family", choices=("badpq", "pomega", "custom"), help="family name")
    p.add_argument("--N", type=int, default=200, help="number of blocks in the truncation")
    p.add_argument("--in", dest="input_path", help="family document JSON (overrides --family/--N)")
    _common(p)

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--seed", type=int, help="64-bit seed (required)")
    p.add_argument("--count", type=int, help="instances per suite (default: per-suite counts)")
    p.add_argument("--max-dim", type=int, default=Config.MAX_DIM, help="dimension cap for random instances")
    p.add_argument("--suite", dest="suites", action="append", default=[], help="restrict to a suite (repeatable)")
    p.add_argument("--db", nargs="?", const=Config.DEFAULT_DATABASE_URL, default=Config.DATABASE_URL or None,
                   help="record the run in this database")
    _common(p)

    p = sub.add_parser("history", help="list stored verification runs")
    p.add_argument("--db", default=Config.DATABASE_URL or Config.DEFAULT_DATABASE_URL)
    p.add_argument("--limit", type=int, default=20)
    _common(p)

    p = sub.add_parser("replay", help="re-run a stored counterexample")
    p.add_argument("--id", dest="record_id", type=int, required=True, help="counterexample id")
    p.add_argument("--db", default=Config.DATABASE_URL or Config.DEFAULT_DATABASE_URL)
    _common(p)
    return parser


def parse_run_config(argv: Sequence[str]) -> RunConfig:
    """argparse exits with status 2 on malformed flags."""
    args = build_parser().parse_args(list(argv))
    return RunConfig(
        subcommand=args.subcommand,
        tolerances=Config.tolerances(eig_cluster=args.tol_eig, order_tol=args.tol_order),
        input_path=getattr(args, "input_path", None),
        output_path=args.out,
        output_format=args.format,
        seed=getattr(args, "seed", None),
        count=getattr(args, "count", None),
        max_dim=getattr(args, "max_dim", Config.MAX_DIM),
        suites=tuple(getattr(args, "suites", ())),
        family=getattr(args, "family", None),
        N=getattr(args, "N", None),
        method=getattr(args, "method", "recursive"),
        db_url=getattr(args, "db", None),
        record_id=getattr(args, "record_id", None),
        limit=getattr(args, "limit", 20),
        schedule_depth=Config.SCHEDULE_DEPTH,
        workers=Config.SUITE_WORKERS,
    )
