"""Method dispatch plus the cross-check and benchmark drivers behind the CLI."""
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import limits
from .cnf import Cnf, normalize, random_ksat, write_dimacs
from .oracle import Verdict, brute_force, dpll
from .symsolver import (Detector, SignedSum, algorithm1, raw_growth,
                        solve_exact_recursion, solve_symmetry)
from .tabalg import compile_cnf, first_term, is_symmetric_all

SCHEMA_SOLVE = "clifsat.solve/1"
SCHEMA_XCHECK = "clifsat.xcheck/1"
METHODS = ("symmetry", "dpll", "brute", "table", "exact")


@dataclass
class Outcome:
    verdict: Verdict
    method: str
    witness: Optional[tuple] = None
    trace: Optional[dict] = None


def table_verdict(f: Cnf) -> Outcome:
    """Unsatisfiable iff the compiled idempotent is reflection invariant."""
    g = normalize(f)
    s = compile_cnf(g)
    if g.is_clause_free():
        # excluded from the invariance criterion: no clauses means 1
        return Outcome(Verdict.SAT, "table", (False,) * f.n)
    if is_symmetric_all(s):
        return Outcome(Verdict.UNSAT, "table")
    return Outcome(Verdict.SAT, "table", first_term(s))


def solve(f: Cnf, method="symmetry", detector="l1", heuristic="maxocc",
          scalar_first=True) -> Outcome:
    if method == "brute":
        r = brute_force(f)
        return Outcome(r.verdict, method, r.witness)
    if method == "dpll":
        r = dpll(f)
        return Outcome(r.verdict, method, r.witness)
    if method == "table":
        return table_verdict(f)
    if method == "exact":
        return Outcome(solve_exact_recursion(f), method)
    if method == "symmetry":
        if normalize(f).is_clause_free():
            return Outcome(Verdict.SAT, method, (False,) * f.n,
                           {"exit": "no_clauses", "levels": []})
        run = solve_symmetry(f, Detector(detector), heuristic,
                             scalar_first=scalar_first)
        return Outcome(run.verdict, method, None, run.to_json())
    raise ValueError(f"unknown method {method!r}")


# ------------------------------------------------------------------- xcheck

def instance_seeds(seed, count):
    """Per-instance seeds derived from one 64-bit master seed."""
    ss = np.random.SeedSequence(int(seed) & 0xFFFFFFFFFFFFFFFF)
    return [int(x) for x in ss.generate_state(count, dtype=np.uint64)] if count else []


def _check_one(job):
    name, f, detectors, scalar_first = job
    row = {"instance": name, "n": f.n, "m": f.m}
    truth = brute_force(f).verdict
    row["truth"] = str(truth)
    verdicts = {"dpll": dpll(f).verdict, "table": table_verdict(f).verdict}
    for d in detectors:
        verdicts[f"L{d[-1]}"] = solve(f, "symmetry", d,
                                      scalar_first=scalar_first).verdict
    for key, v in verdicts.items():
        label = key if key in ("dpll", "table") else f"verdict_{key}"
        row[label] = str(v)
    row["agree"] = {k: v is truth for k, v in verdicts.items()}
    return row, f


def xcheck(n, m, k, count, seed, detectors=("l0", "l1", "l2"), inject=(),
           jobs=1, scalar_first=True):
    """Run every method on ``count`` random instances plus ``inject``.

    ``inject`` holds ``(name, Cnf)`` pairs checked ahead of the random ones.
    Returns a JSON-ready report with the agreement matrix and a DIMACS copy
    of every instance some method got wrong.
    """
    limits.check("oracle", n)
    detectors = [Detector(d).value for d in detectors]
    jobs_list = [(name, f, detectors, scalar_first) for name, f in inject]
    for i, s in enumerate(instance_seeds(seed, count)):
        jobs_list.append((f"rand-{i}-{s}", random_ksat(n, m, k, s),
                          detectors, scalar_first))
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_check_one, jobs_list, chunksize=8))
    else:
        results = [_check_one(j) for j in jobs_list]

    methods = ["dpll", "table"] + [f"L{d[-1]}" for d in detectors]
    agreement = {}
    for meth in methods:
        ok = sum(row["agree"][meth] for row, _ in results)
        agreement[meth] = {"agree": ok, "total": len(results),
                           "rate": ok / len(results) if results else 1.0}
    disagreements = []
    for row, f in results:
        for meth in methods:
            if not row["agree"][meth]:
                label = meth if meth in ("dpll", "table") else f"verdict_{meth}"
                disagreements.append({
                    "instance": row["instance"], "method": meth,
                    "truth": row["truth"], "verdict": row[label],
                    "dimacs": dump_dimacs(f, row["instance"], meth, seed,
                                          row["truth"], row[label]),
                })
    return {
        "schema": SCHEMA_XCHECK,
        "seed": int(seed),
        "params": {"n": n, "m": m, "k": k, "count": count,
                   "detectors": detectors, "scalar_first": scalar_first,
                   "injected": [name for name, _ in inject]},
        "instances": [row for row, _ in results],
        "agreement": agreement,
        "disagreements": disagreements,
    }


def dump_dimacs(f, name, method, seed, truth, verdict):
    header = (f"c clifsat xcheck instance={name} method={method} seed={seed}\n"
              f"c truth={truth} verdict={verdict}\n")
    return header + write_dimacs(f)


# -------------------------------------------------------------------- bench

BENCH_COLUMNS = ("record", "n", "instance", "method", "level", "value")


def bench(n_values, ratio, k, count, seed, detectors=("l0", "l1", "l2")):
    """Yield long-format rows: runtimes per method and term-growth curves.

    ``growth_raw`` rows are plain elimination with no simplification, one
    row per depth; ``growth_algo`` rows are the solver's term counts as it
    enters each level (after elimination, before simplification).
    """
    for n in n_values:
        m = max(1, round(ratio * n))
        for idx, s in enumerate(instance_seeds(seed + n, count)):
            f = normalize(random_ksat(n, m, min(k, n), s))
            name = f"n{n}-{idx}"
            for d, terms in enumerate(raw_growth(f)):
                yield ("growth_raw", n, name, "", d, terms)
            run = algorithm1(SignedSum.of(f), Detector.L0)
            for lv in run.levels:
                yield ("growth_algo", n, name, "symmetry-l0", lv.depth, lv.terms_in)
            timed = [("brute", {}), ("dpll", {}), ("table", {}), ("exact", {})]
            timed += [(f"symmetry-{d}", {"detector": d}) for d in detectors]
            for label, kw in timed:
                t0 = time.perf_counter()
                solve(f, label.split("-")[0], **kw)
                yield ("runtime", n, name, label, "", round(time.perf_counter() - t0, 6))
