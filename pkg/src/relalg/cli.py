"""Command-line front end.

Exit codes are a stable contract: 0 success/valid, 1 invalid representation,
2 usage or parse error, 3 environment failure (e.g. solver cannot launch).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import batch, comer, fixtures
from .algebra import (
    UnknownAlgebraError,
    catalog_get,
    catalog_names,
    format_algebra_json,
    format_algebra_text,
)
from .repcheck import parse_rep_json, GroupingRep, LabelingRep
from .repcheck import verify_grouping, verify_labeling, verify_points
from .satenc import emit_dimacs, encode_group, encode_points, point_bound
from .solver import SolverLaunchError, default_solver_command

OK, INVALID, USAGE, ENVIRONMENT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _json_dump(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def cmd_catalog(args) -> int:
    if args.name:
        spec = catalog_get(args.name)
        text = format_algebra_json(spec) if args.format == "json" else format_algebra_text(spec)
        _emit(text, args.output)
    else:
        _emit("\n".join(catalog_names()), args.output)
    return OK


def cmd_comer(args) -> int:
    if args.scan:
        if args.colors is None:
            raise UsageError("--scan needs --colors")
        hits = comer.scan(
            args.colors, mode=args.mode, max_p=args.max_p, workers=args.workers
        )
        _emit(_json_dump({"colors": args.colors, "mode": args.mode, "witnesses": hits}), args.output)
        return OK
    if args.p is None or args.m is None:
        raise UsageError("either --scan or both --p and --m are required")
    part = comer.coset_partition(args.p, args.m)
    report = comer.classify(part)
    _emit(_json_dump(report.to_dict()), args.output)
    return OK


def cmd_cycles(args) -> int:
    part = comer.coset_partition(args.p, args.m)
    _emit(comer.table_csv(comer.cycle_table(part)), args.output)
    return OK


def cmd_verify(args) -> int:
    spec = catalog_get(args.algebra)
    try:
        text = Path(args.rep_file).read_text(encoding="utf-8")
        rep = parse_rep_json(spec, text)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot read representation: {exc}", file=sys.stderr)
        return USAGE
    if isinstance(rep, LabelingRep):
        report = verify_labeling(spec, rep)
    elif isinstance(rep, GroupingRep):
        report = verify_grouping(spec, rep)
    else:
        report = verify_points(spec, rep, require_nonempty=True)
    _emit(_json_dump(report.to_dict()), args.output)
    return OK if report.valid else INVALID


def cmd_encode(args) -> int:
    spec = catalog_get(args.algebra)
    if args.mode == "group":
        cnf = encode_group(spec, args.n, nonempty_atoms=args.nonempty_atoms)
    else:
        cnf = encode_points(
            spec,
            args.n,
            symmetry_break=args.symmetry_break,
            degree_bounds=args.degree_bounds,
            nonempty_atoms=args.nonempty_atoms,
        )
    _emit(emit_dimacs(cnf), args.output)
    return OK


def cmd_solve(args) -> int:
    spec = catalog_get(args.algebra)
    solver_command = args.solver_cmd or default_solver_command()
    options = batch.BatchOptions(
        symmetry_break=args.symmetry_break,
        degree_bounds=args.degree_bounds,
        nonempty_atoms=args.nonempty_atoms,
    )

    def progress(entry: dict) -> None:
        line = f"{entry['algebra']} {entry['mode']} n={entry['n']}: {entry['status']}"
        if "seconds" in entry:
            line += f" ({entry['seconds']}s)"
        print(line, file=sys.stderr, flush=True)

    results = batch.run_batch(
        spec,
        args.mode,
        args.n_from,
        args.n_to,
        solver_command,
        timeout=args.timeout,
        options=options,
        workers=args.workers,
        journal_path=args.output,
        models_dir=args.models_dir,
        progress=progress,
    )
    summary = {
        "algebra": spec.name,
        "mode": args.mode,
        "solver": solver_command,
        "results": results,
        "sat_n": [r["n"] for r in results if r["status"] == "sat"],
        "unsat_n": [r["n"] for r in results if r["status"] == "unsat"],
        "unknown_n": [r["n"] for r in results if r["status"] not in ("sat", "unsat")],
    }
    print(_json_dump(summary))
    return OK


def cmd_bound(args) -> int:
    spec = catalog_get(args.algebra)
    _emit(_json_dump(point_bound(spec).to_dict()), args.output)
    return OK


def cmd_fixtures(args) -> int:
    directory = Path(args.dir)
    fixtures.write_all(directory)
    results = fixtures.verify_all(directory)
    print(fixtures.summary_json(results))
    return OK if fixtures.all_as_expected(results) else INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relalg",
        description="Finite integral relation algebras: Comer constructions, "
        "representation checking, SAT representability search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list catalog algebras or show one")
    p.add_argument("--name")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("comer", help="classify a coset algebra or scan primes")
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--scan", action="store_true")
    p.add_argument("--colors", type=int)
    p.add_argument("--mode", choices=("color", "split-sym", "split-asym"), default="color")
    p.add_argument("--max-p", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output")
    p.set_defaults(func=cmd_comer)

    p = sub.add_parser("cycles", help="CSV of the mandatory-cycle table")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("verify", help="verify a representation JSON file")
    p.add_argument("--algebra", required=True)
    p.add_argument("rep_file")
    p.add_argument("--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("encode", help="emit a DIMACS instance")
    p.add_argument("--algebra", required=True)
    p.add_argument("--mode", choices=("group", "points"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--symmetry-break", action="store_true")
    p.add_argument("--degree-bounds", action="store_true")
    p.add_argument("--nonempty-atoms", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("solve", help="encode, solve, decode, verify over a range of n")
    p.add_argument("--algebra", required=True)
    p.add_argument("--mode", choices=("group", "points"), required=True)
    p.add_argument("--n-from", type=int, required=True)
    p.add_argument("--n-to", type=int, required=True)
    p.add_argument("--solver-cmd", help="defaults to RA_SOLVER_CMD, a PATH solver, or the bundled one")
    p.add_argument("--timeout", type=float)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--symmetry-break", action="store_true")
    p.add_argument("--degree-bounds", action="store_true")
    p.add_argument("--nonempty-atoms", action="store_true")
    p.add_argument("--output", help="append-only JSON-lines journal; enables resume")
    p.add_argument("--models-dir")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bound", help="point-count bound derivation for an algebra")
    p.add_argument("--algebra", required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("fixtures", help="regenerate and re-verify the shipped fixtures")
    p.add_argument("--dir", default="fixtures")
    p.set_defaults(func=cmd_fixtures)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (UnknownAlgebraError, ValueError) as exc:
        message = exc.args[0] if exc.args else str(exc)
        print(f"error: {message}", file=sys.stderr)
        return USAGE
    except SolverLaunchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ENVIRONMENT
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
