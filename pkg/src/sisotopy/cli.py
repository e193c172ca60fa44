"""Command-line entry point.

Exit codes: 0 success, 1 counterexample found by an audit, 2 input parse
error, 3 order bound exceeded, 4 degree mismatch, 5 not a quasigroup.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import List, Optional

from . import audits, fixtures
from .census import default_workers, run_census
from .errors import DegreeMismatch, NotAQuasigroup, OrderTooLarge
from .isotopy import (
    IsotopismTriple,
    apply_isotopism,
    fg_triple,
    s_isotopism_witnesses,
)
from .magma import Permutation, classify, parse_permutation
from .smarandache import s_structures
from .tablefile import TableParseError, read_table, read_triple, write_table

FORMAT_VERSION = 1

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_PARSE = 2
EXIT_BOUND = 3
EXIT_DEGREE = 4
EXIT_NOT_QUASIGROUP = 5


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def emit(command: str, config: dict, results: dict, counterexamples: list, started: float) -> None:
    report = {
        "format_version": FORMAT_VERSION,
        "command": command,
        "config": config,
        "results": results,
        "counterexamples": counterexamples,
        "timing": {"seconds": round(time.perf_counter() - started, 6)},
    }
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")


def _certs_json(t) -> list:
    return [c.as_dict() for c in s_structures(t)]


def cmd_classify(args) -> int:
    started = time.perf_counter()
    t = read_table(args.input)
    cls = classify(t)
    certs = _certs_json(t)
    results = {
        "order": t.order,
        "classification": cls.as_dict(),
        "smarandache": bool(certs),
        "certificates": certs,
    }
    emit("classify", {"in": str(args.input)}, results, [], started)
    return EXIT_OK


def _parse_triple_args(args) -> IsotopismTriple:
    if args.triple:
        return IsotopismTriple(*(parse_permutation(s) for s in args.triple))
    if args.triple_file:
        return read_triple(args.triple_file)
    u, v = (parse_permutation(s) for s in args.principal)
    return IsotopismTriple(u, v, Permutation.identity(u.degree))


def cmd_isotope(args) -> int:
    started = time.perf_counter()
    t = read_table(args.input)
    config = {"in": str(args.input), "out": None if args.out is None else str(args.out)}
    if args.fg is not None:
        f, g = args.fg
        if not (0 <= f < t.order and 0 <= g < t.order):
            raise DegreeMismatch(f"f, g must lie in 0..{t.order - 1}")
        a = fg_triple(t, f, g)
        config["fg"] = [f, g]
    else:
        a = _parse_triple_args(args)
        config["triple"] = a.as_dict()
    r = apply_isotopism(t, a)
    if args.out is not None:
        write_table(args.out, r)
    witnesses = []
    if s_structures(t) and s_structures(r):
        witnesses = [w.as_dict() for w in s_isotopism_witnesses(t, r, a)]
    results = {
        "triple": a.as_dict(),
        "source_class": classify(t).as_dict(),
        "isotope_class": classify(r).as_dict(),
        "isotope": [list(row) for row in r.cells],
        "s_witnesses": witnesses,
    }
    emit("isotope", config, results, [], started)
    return EXIT_OK


def cmd_census(args) -> int:
    started = time.perf_counter()
    workers = args.workers or default_workers()
    report = run_census(
        args.order,
        classes=args.classes,
        with_s=args.s_census,
        workers=workers,
        long_run=args.long_run,
        checkpoint=args.checkpoint,
    )
    results = report.as_dict()
    problems = report.invariant_problems()
    results["invariant_problems"] = problems
    config = {
        "order": args.order,
        "classes": args.classes,
        "s_census": args.s_census,
        "long_run": args.long_run,
        "workers": workers,
        "checkpoint": None if args.checkpoint is None else str(args.checkpoint),
    }
    emit("census", config, results, [], started)
    summary = (
        f"order {report.order}: {report.total_loops} loops, "
        f"{report.isomorphy_class_count} isomorphy classes"
    )
    if report.isotopy is not None:
        summary += f", {report.isotopy_class_count} isotopy classes"
    if report.s_census is not None:
        summary += f", {report.s_loop_count} S-loops, {report.non_s_loop_count} non-S-loops"
    print(summary, file=sys.stderr)
    return EXIT_COUNTEREXAMPLE if problems else EXIT_OK


SUITES = ("equivalence", "isotgroup", "decompose", "gs", "corollaries")


def _fixture_tables(paths: List[Path], default: dict) -> dict:
    if not paths:
        return default
    return {Path(p).stem: read_table(p) for p in paths}


def cmd_audit(args) -> int:
    started = time.perf_counter()
    fx = list(args.fixtures or []) + list(args.input or [])
    if args.suite == "equivalence":
        out = audits.equivalence_suite(_fixture_tables(fx, audits.equivalence_fixtures()), args.seed)
    elif args.suite == "isotgroup":
        orders = tuple(args.order) if args.order else (2, 3, 4)
        out = audits.isotgroup_suite(orders)
    elif args.suite == "decompose":
        tables = _fixture_tables(fx, {"example1_dot": fixtures.EXAMPLE1_DOT})
        runs = [audits.decomposition_suite(t, args.trials, args.seed) for t in tables.values()]
        out = {
            "suite": "decompose",
            "runs": dict(zip(tables, runs)),
            "checked": sum(r["checked"] for r in runs),
            "passed": sum(r["passed"] for r in runs),
            "all_passed": all(r["all_passed"] for r in runs),
            "counterexamples": [c for r in runs for c in r["counterexamples"]],
        }
        fg_tables = _fixture_tables(fx, {"example1_dot": fixtures.EXAMPLE1_DOT, "Z6": fixtures.cyclic(6)})
        fg = audits.fg_recovery_suite(fg_tables)
        out["fg_recovery"] = fg
        out["checked"] += fg["checked"]
        out["passed"] += fg["passed"]
        out["all_passed"] = out["all_passed"] and fg["all_passed"]
        out["counterexamples"] += fg["counterexamples"]
    elif args.suite == "gs":
        out = audits.gs_suite(_fixture_tables(fx, audits.gs_fixtures()))
    else:
        default = {"Z4": fixtures.cyclic(4), "example1_dot": fixtures.EXAMPLE1_DOT}
        out = audits.corollary_suite(_fixture_tables(fx, default))
    counterexamples = out.pop("counterexamples")
    config = {
        "suite": args.suite,
        "seed": args.seed,
        "trials": args.trials,
        "fixtures": [str(p) for p in fx],
    }
    emit("audit", config, out, counterexamples, started)
    print(f"{args.suite}: {out['passed']}/{out['checked']} checks passed", file=sys.stderr)
    return EXIT_OK if out["all_passed"] else EXIT_COUNTEREXAMPLE


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="sisotopy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("classify", help="classify a table and list its S-certificates")
    p.add_argument("input", nargs="?", type=Path)
    p.add_argument("--in", dest="input_flag", type=Path)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("isotope", help="apply an isotopism to a table")
    p.add_argument("input", nargs="?", type=Path)
    p.add_argument("--in", dest="input_flag", type=Path)
    p.add_argument("--out", type=Path)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--triple", nargs=3, metavar=("U", "V", "W"))
    group.add_argument("--triple-file", type=Path)
    group.add_argument("--fg", nargs=2, type=int, metavar=("F", "G"))
    group.add_argument("--principal", nargs=2, metavar=("U", "V"))
    p.set_defaults(func=cmd_isotope)

    p = sub.add_parser("census", help="enumerate and classify loops of one order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--classes", choices=("both", "isomorphy", "isotopy"), default="both")
    p.add_argument("--s-census", action="store_true")
    p.add_argument("--long-run", action="store_true")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--checkpoint", type=Path)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("audit", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--seed", type=int, default=audits.DEFAULT_SEED)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--order", type=int, action="append")
    p.add_argument("--in", dest="input", type=Path, action="append")
    p.add_argument("fixtures", nargs="*", type=Path)
    p.set_defaults(func=cmd_audit)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("classify", "isotope"):
        args.input = args.input_flag or args.input
        if args.input is None:
            parser.error("an input table is required (positional or --in)")
    try:
        return args.func(args)
    except TableParseError as exc:
        print(f"sisotopy: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        if isinstance(exc, OrderTooLarge):
            print(f"sisotopy: {exc}", file=sys.stderr)
            return EXIT_BOUND
        if isinstance(exc, DegreeMismatch):
            print(f"sisotopy: degree mismatch: {exc}", file=sys.stderr)
            return EXIT_DEGREE
        if isinstance(exc, NotAQuasigroup):
            print(f"sisotopy: {exc}", file=sys.stderr)
            return EXIT_NOT_QUASIGROUP
        print(f"sisotopy: invalid input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"sisotopy: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
