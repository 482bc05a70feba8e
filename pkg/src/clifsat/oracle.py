"""Ground-truth satisfiability: exhaustive enumeration and a plain DPLL.

Nothing here touches the truth-table or signed-sum code, so these can be
used to check them.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from . import limits
from .cnf import Cnf, assignment_from_index


class Verdict(str, Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class BruteResult:
    verdict: Verdict
    model_count: int
    witness: Optional[tuple] = None


_CHUNK = 1 << 16


def brute_force(f: Cnf) -> BruteResult:
    """Enumerate all 2^n assignments in numpy chunks and count models."""
    limits.check("oracle", f.n)
    total = 1 << f.n
    count = 0
    witness = None
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        ok = np.ones(idx.shape, dtype=bool)
        for c in f.clauses:
            sat = np.zeros(idx.shape, dtype=bool)
            for lit in c:
                bit = (idx >> (abs(lit) - 1)) & 1
                sat |= bit == (1 if lit > 0 else 0)
            ok &= sat
        hits = np.flatnonzero(ok)
        count += len(hits)
        if witness is None and len(hits):
            witness = assignment_from_index(int(idx[hits[0]]), f.n)
    return BruteResult(Verdict.SAT if count else Verdict.UNSAT, count, witness)


@dataclass(frozen=True)
class DpllResult:
    verdict: Verdict
    witness: Optional[tuple] = None


def _assign(clauses, lit):
    out = []
    for c in clauses:
        if lit in c:
            continue
        if -lit in c:
            c = c - {-lit}
        out.append(c)
    return out


def _dpll(clauses, assignment):
    while True:
        if not clauses:
            return assignment
        if any(not c for c in clauses):
            return None
        unit = next((c for c in clauses if len(c) == 1), None)
        if unit is not None:
            (lit,) = unit
        else:
            lits = {l for c in clauses for l in c}
            lit = next((l for l in sorted(lits, key=abs) if -l not in lits), None)
            if lit is None:
                break
        assignment = {**assignment, abs(lit): lit > 0}
        clauses = _assign(clauses, lit)

    # lowest-index unassigned variable, F branch first
    v = min(abs(l) for c in clauses for l in c)
    for lit in (-v, v):
        found = _dpll(_assign(clauses, lit), {**assignment, v: lit > 0})
        if found is not None:
            return found
    return None


def dpll(f: Cnf) -> DpllResult:
    """Recursive DPLL with unit propagation and pure-literal elimination."""
    model = _dpll([frozenset(c) for c in f.clauses], {})
    if model is None:
        return DpllResult(Verdict.UNSAT)
    witness = tuple(model.get(i, False) for i in range(1, f.n + 1))
    return DpllResult(Verdict.SAT, witness)
