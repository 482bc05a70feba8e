"""Signed sums of CNF problems and the literal-elimination symmetry solver.

A signed sum is a formal combination ``sum_j s_j S_j`` with ``s_j = +-1``.
Eliminating variable v replaces each term by ``s_j (S_j|v=F - S_j|v=T)``;
the solver keeps eliminating until the sum is empty, a term is known to be
satisfiable, or only constant terms remain.
"""
import itertools
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

from . import limits
from .cnf import Cnf, normalize, restrict
from .oracle import Verdict, dpll


class Detector(str, Enum):
    """How hard ``classify`` works on a single term.

    L0 only recognises the syntactic cases; L1 adds unit propagation and
    pure-literal elimination run to a fixpoint (no branching); L2 runs DPLL.
    """
    L0 = "l0"
    L1 = "l1"
    L2 = "l2"


class Kind(str, Enum):
    TRIVIALLY_UNSAT = "trivially_unsat"
    TAUTOLOGY = "tautology"
    KNOWN_SAT = "known_sat"
    UNKNOWN = "unknown"


def _propagate(clauses):
    """Unit propagation + pure literals. Returns remaining clauses or None."""
    clauses = [frozenset(c) for c in clauses]
    while True:
        if any(not c for c in clauses):
            return None
        unit = next((c for c in clauses if len(c) == 1), None)
        if unit is None:
            lits = {l for c in clauses for l in c}
            unit = next(({l} for l in lits if -l not in lits), None)
            if unit is None:
                return clauses
        (lit,) = unit
        clauses = [c - {-lit} for c in clauses if lit not in c]


def classify(f: Cnf, d: Detector = Detector.L1) -> Kind:
    """Refuted problems (by any level) come back as TRIVIALLY_UNSAT."""
    if f.has_empty_clause():
        return Kind.TRIVIALLY_UNSAT
    if f.is_clause_free():
        return Kind.TAUTOLOGY
    d = Detector(d)
    if d is Detector.L1:
        rest = _propagate(f.clauses)
        if rest is None:
            return Kind.TRIVIALLY_UNSAT
        return Kind.UNKNOWN if rest else Kind.KNOWN_SAT
    if d is Detector.L2:
        sat = dpll(f).verdict is Verdict.SAT
        return Kind.KNOWN_SAT if sat else Kind.TRIVIALLY_UNSAT
    return Kind.UNKNOWN


# ------------------------------------------------------------- signed sums

@dataclass(frozen=True)
class SignedCnf:
    sign: int
    problem: Cnf

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")


@dataclass(frozen=True)
class SignedSum:
    terms: tuple = ()
    live_vars: tuple = ()

    def __post_init__(self):
        terms = tuple(t if isinstance(t, SignedCnf) else SignedCnf(*t)
                      for t in self.terms)
        live = tuple(sorted(set(self.live_vars)))
        for t in terms:
            stray = t.problem.occurring_vars() - set(live)
            if stray:
                raise ValueError(f"term uses non-live variables {sorted(stray)}")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "live_vars", live)

    @classmethod
    def of(cls, f: Cnf):
        return cls((SignedCnf(1, f),), tuple(sorted(f.variables)))

    def __len__(self):
        return len(self.terms)


def eliminate(sigma: SignedSum, v: int) -> SignedSum:
    if v not in sigma.live_vars:
        raise ValueError(f"variable {v} is not live")
    terms = []
    for t in sigma.terms:
        terms.append(SignedCnf(t.sign, restrict(t.problem, v, False)))
        terms.append(SignedCnf(-t.sign, restrict(t.problem, v, True)))
    return SignedSum(tuple(terms), tuple(x for x in sigma.live_vars if x != v))


def simplify(sigma: SignedSum, d: Detector = Detector.L0) -> SignedSum:
    """Drop refuted terms. Opposite-sign copies of one problem are kept."""
    kept = tuple(t for t in sigma.terms
                 if classify(t.problem, d) is not Kind.TRIVIALLY_UNSAT)
    return SignedSum(kept, sigma.live_vars)


def cancel_pairs(sigma: SignedSum) -> SignedSum:
    """Remove +S/-S pairs. Not part of the faithful algorithm; benchmarks only."""
    pending = Counter()
    for t in sigma.terms:
        pending[t.problem] += t.sign
    terms = []
    for t in sigma.terms:
        left = pending[t.problem]
        if left and (left > 0) == (t.sign > 0):
            terms.append(t)
            pending[t.problem] -= t.sign
    return SignedSum(tuple(terms), sigma.live_vars)


def _is_constant_term(f: Cnf):
    return f.is_clause_free() or f.has_empty_clause()


def scalar_value(sigma: SignedSum) -> int:
    """Sum of the signs of the clause-free terms; empty-clause terms add 0."""
    if not all(_is_constant_term(t.problem) for t in sigma.terms):
        raise ValueError("scalar_value needs every term clause-free or refuted")
    return sum(t.sign for t in sigma.terms if t.problem.is_clause_free())


def eval_sigma(sigma: SignedSum, a) -> int:
    """Coefficient of the sum at the assignment ``a`` (mapping var -> bool)."""
    if set(a) != set(sigma.live_vars):
        raise ValueError("assignment must cover exactly the live variables")
    total = 0
    for t in sigma.terms:
        if all(any(a[abs(l)] == (l > 0) for l in c) for c in t.problem.clauses):
            total += t.sign
    return total


def sigma_values(sigma: SignedSum):
    """All coefficients, keyed by assignment tuple over ``live_vars``."""
    live = sigma.live_vars
    return {bits: eval_sigma(sigma, dict(zip(live, bits)))
            for bits in itertools.product((False, True), repeat=len(live))}


def is_constant_reference(sigma: SignedSum) -> Optional[int]:
    """delta when the sum equals delta * 1 as a function, else None."""
    limits.check("idemset", len(sigma.live_vars))
    values = set(sigma_values(sigma).values())
    return values.pop() if len(values) == 1 else None


# ------------------------------------------------------------ the algorithm

def pick_maxocc(sigma: SignedSum) -> int:
    """Most frequent live variable over all clauses, ties to lowest index."""
    occ = Counter(abs(l) for t in sigma.terms for c in t.problem.clauses for l in c)
    return min(occ, key=lambda v: (-occ[v], v))


def pick_lowest(sigma: SignedSum) -> int:
    return min(abs(l) for t in sigma.terms for c in t.problem.clauses for l in c)


HEURISTICS = {"maxocc": pick_maxocc, "lowest": pick_lowest}


@dataclass
class Level:
    depth: int
    terms_in: int
    terms_kept: int
    eliminated: Optional[int] = None
    exit: Optional[str] = None


@dataclass
class SymmetryRun:
    asymmetric: bool
    exit: str
    levels: list = field(default_factory=list)

    @property
    def verdict(self):
        return Verdict.SAT if self.asymmetric else Verdict.UNSAT

    def to_json(self):
        return {"verdict": str(self.verdict), "exit": self.exit,
                "levels": [vars(lv) for lv in self.levels]}


def algorithm1(sigma: SignedSum, d: Detector = Detector.L1,
               pick: Callable = pick_maxocc, cancel: bool = False,
               scalar_first: bool = True) -> SymmetryRun:
    """Decide whether ``sigma`` fails to be a multiple of the identity.

    Per level: drop refuted terms; an empty sum is symmetric; a sum of only
    constant terms is decided by its scalar value; otherwise a tautological
    or provably satisfiable term ends the run as asymmetric; otherwise
    eliminate one variable and repeat.

    With ``scalar_first=False`` the satisfiable-term exit is tested before
    the scalar base case, so any clause-free term answers T.
    """
    d = Detector(d)
    if isinstance(pick, str):
        pick = HEURISTICS[pick]
    levels = []
    depth = 0
    while True:
        before = len(sigma)
        sigma = simplify(sigma, d)
        if cancel:
            sigma = cancel_pairs(sigma)
        level = Level(depth, before, len(sigma))
        levels.append(level)
        if not sigma.terms:
            level.exit = "empty"
            return SymmetryRun(False, "empty", levels)
        constant = all(t.problem.is_clause_free() for t in sigma.terms)
        if constant and scalar_first:
            level.exit = "scalar"
            return SymmetryRun(scalar_value(sigma) != 0, "scalar", levels)
        kinds = [classify(t.problem, d) for t in sigma.terms]
        if any(k in (Kind.TAUTOLOGY, Kind.KNOWN_SAT) for k in kinds):
            level.exit = "known_sat"
            return SymmetryRun(True, "known_sat", levels)
        v = pick(sigma)
        level.eliminated = v
        sigma = eliminate(sigma, v)
        depth += 1


def solve_symmetry(f: Cnf, d: Detector = Detector.L1, pick="maxocc",
                   cancel=False, scalar_first=True) -> SymmetryRun:
    """SAT/UNSAT for a nonempty problem via ``algorithm1`` on ``+f``."""
    f = normalize(f)
    if f.is_clause_free():
        raise ValueError("problem has no clauses after normalization")
    return algorithm1(SignedSum.of(f), d, pick, cancel, scalar_first)


def solve_exact_recursion(f: Cnf) -> Verdict:
    """UNSAT iff both cofactors are UNSAT, recursively (no symmetry relaxation)."""
    kind = classify(f, Detector.L0)
    if kind is Kind.TRIVIALLY_UNSAT:
        return Verdict.UNSAT
    if kind is Kind.TAUTOLOGY:
        return Verdict.SAT
    v = min(f.occurring_vars())
    for value in (False, True):
        if solve_exact_recursion(restrict(f, v, value)) is Verdict.SAT:
            return Verdict.SAT
    return Verdict.UNSAT


def raw_growth(f: Cnf, order=None):
    """Term counts of plain elimination (no simplification, no cancellation)."""
    sigma = SignedSum.of(f)
    counts = [len(sigma)]
    for v in order or sigma.live_vars:
        sigma = eliminate(sigma, v)
        counts.append(len(sigma))
    return counts
