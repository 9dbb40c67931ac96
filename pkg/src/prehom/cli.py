"""Command-line interface: ``prehom analyze | check-lfd | derlog | corpus``.

Exit codes: 0 on success, 1 when a check fails, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .corpus import GROUPS, corpus_list, corpus_run, corpus_run_all
from .pvscore import is_linear_free_divisor, linear_logarithmic_fields
from .report import InputError, load_input, matrix_json, report_json_text, run_analysis

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="prehom", description=(
        "Exact analysis of Lie algebras of linear vector fields: open orbits, "
        "linear free divisors, relative and additive relative invariants."))
    sub = ap.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="run the full analysis on an input file")
    an.add_argument("file")
    an.add_argument("--seed", type=int)
    an.add_argument("--max-degree", type=int)
    an.add_argument("--max-denominator-degree", type=int)
    an.add_argument("--json", metavar="OUT", help="also write the JSON report to OUT ('-' for stdout)")

    lfd = sub.add_parser("check-lfd", help="decide whether the algebra defines a linear free divisor")
    lfd.add_argument("file")
    lfd.add_argument("--seed", type=int, default=0)
    lfd.add_argument("--trials", type=int, default=3)

    dl = sub.add_parser("derlog", help="linear logarithmic vector fields of a polynomial")
    dl.add_argument("--poly", required=True, metavar="FILE", help="input file with a 'poly' field")

    cp = sub.add_parser("corpus", help="built-in examples")
    csub = cp.add_subparsers(dest="corpus_command", required=True)
    csub.add_parser("list", help="list corpus entries")
    run = csub.add_parser("run", help="run entries and compare with expectations")
    run.add_argument("name", nargs="?")
    run.add_argument("--all", action="store_true")
    run.add_argument("--seed", type=int)
    return ap


def _analyze(args) -> int:
    task = load_input(args.file)
    rep = run_analysis(task, seed=args.seed, max_degree=args.max_degree,
                       max_denominator_degree=args.max_denominator_degree)
    if args.json == "-":
        sys.stdout.write(report_json_text(rep))
    else:
        print(rep.to_text())
        if args.json:
            Path(args.json).write_text(report_json_text(rep))
    return EXIT_OK if rep.ok else EXIT_FAIL


def _check_lfd(args) -> int:
    task = load_input(args.file)
    g = task.algebra if task.algebra is not None else linear_logarithmic_fields(task.poly)
    v = is_linear_free_divisor(g, args.trials, args.seed)
    print(f"linear free divisor: {'yes' if v.is_lfd else 'no'} ({v.reason})")
    if v.determinant is not None:
        print(f"Saito determinant: {v.determinant.to_str(task.variables)}")
    return EXIT_OK if v.is_lfd else EXIT_FAIL


def _derlog(args) -> int:
    task = load_input(args.poly)
    if task.poly is None:
        raise InputError("derlog needs an input with a 'poly' field", "$.poly")
    g = linear_logarithmic_fields(task.poly)
    out = {"n": task.n, "variables": list(task.variables), "basis": [matrix_json(m) for m in g.basis]}
    print(json.dumps(out, indent=2))
    return EXIT_OK


def _corpus(args) -> int:
    if args.corpus_command == "list":
        for e in corpus_list():
            print(f"{e.name:22s} {e.description}")
        for g, members in GROUPS.items():
            print(f"{g:22s} compares {' and '.join(members)}")
        return EXIT_OK
    if args.all:
        results = corpus_run_all(args.seed)
    elif args.name:
        try:
            results = corpus_run(args.name, args.seed)
        except KeyError as exc:
            print(f"error: {exc.args[0]}", file=sys.stderr)
            return EXIT_INPUT
    else:
        print("error: give an entry name or --all", file=sys.stderr)
        return EXIT_INPUT
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.seconds:.2f}s)")
        for f in r.failures:
            print(f"    {f}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"analyze": _analyze, "check-lfd": _check_lfd, "derlog": _derlog, "corpus": _corpus}
    try:
        return handlers[args.command](args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
