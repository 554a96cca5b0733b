"""Command line interface.

Subcommands:
    mine-triples    enumerate maximal full boxes to a triples file
    build-lattice   order the triples and emit DOT and/or JSON
    mine-rules      generate and filter temporal association rules to CSV
    conformance     compare results on a cube (default: the bundled toy
                    dataset) against the shipped reference results

Every output is byte-deterministic for identical inputs and flags.  Errors
exit with a non-zero status; conformance mismatches are recorded inside the
report and do not affect the exit status.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .concepts import enumerate_agro_triples
from .conformance import REFERENCE_MIN_CONFIDENCE, REFERENCE_MIN_SUPPORT, report_to_json, run_conformance
from .cube import ORIENTATIONS, reorient
from .errors import AgroLatticeError
from .io import (
    INPUT_FORMATS,
    ingest,
    lattice_to_dot,
    lattice_to_json,
    parse_ratio,
    rules_to_csv,
    triples_to_text,
    write_text,
)
from .lattice import build_lattice
from .rules import SUPPORT_DENOMINATORS, filter_rules, generate_rules

LATTICE_EMITS = ("lattice-dot", "lattice-json", "both")


def _add_input_options(parser: argparse.ArgumentParser, input_required: bool) -> None:
    parser.add_argument("--input", required=input_required, help="path to the input cube file")
    parser.add_argument(
        "--format",
        choices=INPUT_FORMATS,
        default="wide-csv",
        help="input file format (default: wide-csv)",
    )
    parser.add_argument(
        "--orientation",
        choices=ORIENTATIONS,
        default="by_time",
        help="sweep orientation for enumeration (default: by_time)",
    )
    parser.add_argument("--out", help="output path (default: stdout)")


def _add_threshold_options(parser: argparse.ArgumentParser, default_support, default_confidence) -> None:
    parser.add_argument(
        "--min-support",
        default=default_support,
        help=f"minimum support as a decimal or fraction (default: {default_support})",
    )
    parser.add_argument(
        "--min-confidence",
        default=default_confidence,
        help=f"minimum confidence as a decimal or fraction (default: {default_confidence})",
    )
    parser.add_argument(
        "--support-denominator",
        choices=SUPPORT_DENOMINATORS,
        default="locations",
        help="support denominator convention (default: locations)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agrolattice",
        description="Mine closed spatio-temporal patterns and temporal association rules "
        "from Boolean data cubes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_triples = sub.add_parser("mine-triples", help="enumerate maximal full boxes")
    _add_input_options(p_triples, input_required=True)

    p_lattice = sub.add_parser("build-lattice", help="order triples into a Hasse diagram")
    _add_input_options(p_lattice, input_required=True)
    p_lattice.add_argument(
        "--emit",
        choices=LATTICE_EMITS,
        default="both",
        help="artifact(s) to produce (default: both; 'both' requires --out)",
    )
    p_lattice.add_argument(
        "--add-bounds",
        action="store_true",
        help="append artificial top/bottom nodes when the order lacks them",
    )

    p_rules = sub.add_parser("mine-rules", help="generate and filter association rules")
    _add_input_options(p_rules, input_required=True)
    _add_threshold_options(p_rules, "0", "0")

    p_conf = sub.add_parser(
        "conformance", help="compare mined results against the reference results"
    )
    _add_input_options(p_conf, input_required=False)
    _add_threshold_options(
        p_conf, str(REFERENCE_MIN_SUPPORT), str(REFERENCE_MIN_CONFIDENCE)
    )
    return parser


def _load_cube(args):
    if args.input is None:
        from .datasets import load_toy_cube

        return load_toy_cube(args.orientation)
    cube = ingest(Path(args.input), args.format)
    return reorient(cube, args.orientation)


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        write_text(Path(out), text)


def _cmd_mine_triples(args) -> int:
    cube = _load_cube(args)
    triples = enumerate_agro_triples(cube)
    _write(triples_to_text(triples), args.out)
    return 0


def _cmd_build_lattice(args) -> int:
    if args.emit == "both" and args.out is None:
        raise AgroLatticeError("--emit both requires --out (two files are written)")
    cube = _load_cube(args)
    lattice = build_lattice(enumerate_agro_triples(cube), add_bounds=args.add_bounds)
    if args.emit in ("lattice-dot", "both"):
        text = lattice_to_dot(lattice)
        _write(text, args.out + ".dot" if args.emit == "both" else args.out)
    if args.emit in ("lattice-json", "both"):
        text = lattice_to_json(lattice)
        _write(text, args.out + ".json" if args.emit == "both" else args.out)
    return 0


def _cmd_mine_rules(args) -> int:
    cube = _load_cube(args)
    triples = enumerate_agro_triples(cube)
    rules = generate_rules(triples, support_denominator=args.support_denominator)
    kept = filter_rules(rules, parse_ratio(args.min_support), parse_ratio(args.min_confidence))
    _write(rules_to_csv(kept), args.out)
    return 0


def _cmd_conformance(args) -> int:
    cube = _load_cube(args) if args.input is not None else None
    report = run_conformance(
        cube,
        min_support=parse_ratio(args.min_support),
        min_confidence=parse_ratio(args.min_confidence),
    )
    _write(report_to_json(report), args.out)
    return 0


_COMMANDS = {
    "mine-triples": _cmd_mine_triples,
    "build-lattice": _cmd_build_lattice,
    "mine-rules": _cmd_mine_rules,
    "conformance": _cmd_conformance,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (AgroLatticeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
