"""Command-line front end.

Exit codes follow SAT-solver convention: 10 satisfiable, 20 unsatisfiable,
1 on any error. Other subcommands exit 0 on success.
"""
import argparse
import csv
import json
import sys
import warnings
from pathlib import Path

from . import limits
from .cnf import FIVE_CLAUSE_UNSAT, DimacsError, parse_dimacs, random_ksat, write_dimacs
from .clifford import report_json, verify_relations
from .harness import BENCH_COLUMNS, METHODS, SCHEMA_SOLVE, bench, solve, xcheck
from .oracle import Verdict
from .tabalg import compile_cnf, reflect

EXIT_SAT, EXIT_UNSAT, EXIT_ERROR = 10, 20, 1


def _read_cnf(path):
    if path == "-":
        return parse_dimacs(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return parse_dimacs(fh)


def _emit(args, payload, text):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_solve(args):
    f = _read_cnf(args.path)
    out = solve(f, args.method, args.detector, args.heuristic,
                scalar_first=args.exit_order == "scalar-first")
    payload = {
        "schema": SCHEMA_SOLVE, "seed": args.seed, "verdict": str(out.verdict),
        "method": out.method, "detector": args.detector,
        "heuristic": args.heuristic, "n": f.n, "m": f.m,
        "witness": None if out.witness is None else [int(b) for b in out.witness],
        "trace": out.trace,
    }
    lines = [f"c method={out.method} detector={args.detector} "
             f"heuristic={args.heuristic} seed={args.seed}",
             f"s {'SATISFIABLE' if out.verdict is Verdict.SAT else 'UNSATISFIABLE'}"]
    if out.witness is not None:
        lits = [i + 1 if b else -(i + 1) for i, b in enumerate(out.witness)]
        lines.append("v " + " ".join(map(str, lits + [0])))
    _emit(args, payload, "\n".join(lines))
    return EXIT_SAT if out.verdict is Verdict.SAT else EXIT_UNSAT


def cmd_compile(args):
    s = compile_cnf(_read_cnf(args.path))
    print(json.dumps(s.to_json()))
    return 0


def cmd_symcheck(args):
    f = _read_cnf(args.path)
    s = compile_cnf(f)
    per_var = {i: reflect(s, i) == s for i in range(1, f.n + 1)}
    symmetric = all(per_var.values())
    payload = {"n": f.n, "invariant": {str(k): v for k, v in per_var.items()},
               "symmetric": symmetric, "seed": args.seed}
    text = "\n".join([f"x{i}: {'invariant' if ok else 'broken'}"
                      for i, ok in per_var.items()]
                     + [f"symmetric={symmetric}"])
    _emit(args, payload, text)
    return 0


def cmd_xcheck(args):
    inject = [(p, _read_cnf(p)) for p in args.inject]
    if args.inject_example:
        inject.insert(0, ("five-clause-unsat", FIVE_CLAUSE_UNSAT))
    report = xcheck(args.n, args.m, args.k, args.count, args.seed,
                    args.detectors.split(","), inject, args.jobs,
                    scalar_first=args.exit_order == "scalar-first")
    if args.dump_dir:
        out = Path(args.dump_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, bad in enumerate(report["disagreements"]):
            (out / f"disagree-{i:04d}-{bad['method']}.cnf").write_text(bad["dimacs"])
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(f"seed={report['seed']} instances={len(report['instances'])}")
        for meth, row in report["agreement"].items():
            print(f"{meth:>6}: {row['agree']}/{row['total']} ({100 * row['rate']:.1f}%)")
        print(f"disagreements: {len(report['disagreements'])}")
    return 0


def cmd_gen(args):
    sys.stdout.write(write_dimacs(random_ksat(args.n, args.m, args.k, args.seed)))
    return 0


def cmd_bench(args):
    lo, _, hi = args.n_range.partition("..")
    ns = range(int(lo), int(hi or lo) + 1)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(BENCH_COLUMNS)
    for row in bench(ns, args.ratio, args.k, args.count, args.seed,
                     args.detectors.split(",")):
        writer.writerow(row)
    return 0


def cmd_verify(args):
    report = verify_relations(args.n, seed=args.seed)
    failed = [c for c in report if c.status != "pass"]
    if args.format == "json":
        print(report_json(report))
    else:
        for c in report:
            print(f"{c.status.upper():4} {c.identity}"
                  + (f"  [{c.counterexample}]" if c.counterexample else ""))
    return 1 if failed else 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="64-bit master seed")
    common.add_argument("--max-n", type=int, help="override every size guard")
    common.add_argument("--format", choices=("text", "json"), default="text")

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--detector", choices=("l0", "l1", "l2"), default="l1")
    solver.add_argument("--heuristic", choices=("maxocc", "lowest"), default="maxocc")
    solver.add_argument("--exit-order", choices=("scalar-first", "sat-first"),
                        default="scalar-first",
                        help="test the constant base case before or after the "
                             "satisfiable-term exit")

    p = argparse.ArgumentParser(prog="clifsat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common, solver], help="decide a DIMACS file")
    s.add_argument("path")
    s.add_argument("--method", choices=METHODS, default="symmetry")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("compile", parents=[common], help="truth-table JSON")
    s.add_argument("path")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("symcheck", parents=[common], help="per-variable reflection invariance")
    s.add_argument("path")
    s.set_defaults(func=cmd_symcheck)

    s = sub.add_parser("xcheck", parents=[common, solver], help="cross-check all methods")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--k", type=int, default=3)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--detectors", default="l0,l1,l2")
    s.add_argument("--inject", action="append", default=[], metavar="CNF")
    s.add_argument("--inject-example", action="store_true",
                   help="also check the built-in five-clause unsatisfiable instance")
    s.add_argument("--dump-dir", help="write each disagreeing instance here")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_xcheck)

    s = sub.add_parser("gen", parents=[common], help="random k-SAT as DIMACS")
    s.add_argument("n", type=int)
    s.add_argument("m", type=int)
    s.add_argument("k", type=int)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("bench", parents=[common], help="runtimes and term growth as CSV")
    s.add_argument("--n-range", default="4..10", help="inclusive, e.g. 4..10")
    s.add_argument("--ratio", type=float, default=4.3)
    s.add_argument("--k", type=int, default=3)
    s.add_argument("--count", type=int, default=3)
    s.add_argument("--detectors", default="l0,l1,l2")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("verify", parents=[common], help="check the matrix model")
    s.add_argument("--n", type=int, default=3)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    limits.set_max_n(args.max_n)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = lambda msg, *a, **k: print(f"warning: {msg}", file=sys.stderr)
            return args.func(args)
    except (OSError, DimacsError, ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    finally:
        limits.set_max_n(None)


if __name__ == "__main__":
    sys.exit(main())
