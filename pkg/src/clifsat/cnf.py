"""CNF data model, DIMACS I/O, restriction and random instances.

Literals are stored DIMACS-style as nonzero ints (``+v`` for x_v, ``-v``
for its negation). :class:`Literal` is the structured view of the same
thing for callers that prefer named fields.
"""
import io
import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np


class Literal(NamedTuple):
    var: int
    positive: bool = True

    @classmethod
    def from_int(cls, lit):
        if lit == 0:
            raise ValueError("0 is not a literal")
        return cls(abs(lit), lit > 0)

    def __int__(self):
        return self.var if self.positive else -self.var

    def __neg__(self):
        return Literal(self.var, not self.positive)


def as_int(lit):
    """Accept a :class:`Literal` or a signed int, return the signed int."""
    if isinstance(lit, Literal):
        return int(lit)
    lit = int(lit)
    if lit == 0:
        raise ValueError("0 is not a literal")
    return lit


def _clause(lits):
    # dict.fromkeys dedupes while keeping first-seen order
    return tuple(dict.fromkeys(as_int(x) for x in lits))


@dataclass(frozen=True, eq=False)
class Cnf:
    """A conjunction of clauses over variables ``1..n``.

    ``variables`` is the set of variables still in play; restriction removes
    the fixed one but never renumbers the rest. Equality ignores clause and
    literal order (clauses are compared as a multiset).
    """
    n: int
    clauses: tuple = ()
    variables: frozenset = field(default=None)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("variable count must be >= 0")
        clauses = tuple(_clause(c) for c in self.clauses)
        variables = (frozenset(range(1, self.n + 1)) if self.variables is None
                     else frozenset(self.variables))
        for c in clauses:
            for lit in c:
                if abs(lit) > self.n:
                    raise ValueError(f"literal {lit} out of range for n={self.n}")
                if abs(lit) not in variables:
                    raise ValueError(f"literal {lit} uses eliminated variable")
        object.__setattr__(self, "clauses", clauses)
        object.__setattr__(self, "variables", variables)

    @property
    def m(self):
        return len(self.clauses)

    def _key(self):
        return (self.n, self.variables,
                Counter(frozenset(c) for c in self.clauses))

    def __eq__(self, other):
        if not isinstance(other, Cnf):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash((self.n, self.variables,
                     frozenset(self._key()[2].items())))

    def is_clause_free(self):
        return not self.clauses

    def has_empty_clause(self):
        return any(len(c) == 0 for c in self.clauses)

    def occurring_vars(self):
        return {abs(lit) for c in self.clauses for lit in c}

    def __str__(self):
        if not self.clauses:
            return "T"

        def show(c):
            if not c:
                return "()"
            return "(" + " v ".join(f"x{l}" if l > 0 else f"~x{-l}" for l in c) + ")"
        return " ".join(show(c) for c in self.clauses)


# (x1 v ~x2)(x2 v x3)(~x1 v ~x3)(~x1 v ~x2 v x3)(x1 v x2 v ~x3): unsatisfiable.
FIVE_CLAUSE_UNSAT = Cnf(3, [(1, -2), (2, 3), (-1, -3), (-1, -2, 3), (1, 2, -3)])


# ---------------------------------------------------------------- assignments

def assignment_from_index(index, n):
    """Bit ``i-1`` of ``index`` is the value of x_i."""
    return tuple(bool((index >> i) & 1) for i in range(n))


def assignment_index(a):
    return sum(1 << i for i, bit in enumerate(a) if bit)


def evaluate(f: Cnf, a: Sequence[bool]) -> bool:
    if len(a) != f.n:
        raise ValueError(f"assignment has length {len(a)}, expected {f.n}")
    return all(any(a[abs(lit) - 1] == (lit > 0) for lit in c) for c in f.clauses)


# --------------------------------------------------------------- DIMACS I/O

class DimacsError(ValueError):
    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DimacsWarning(UserWarning):
    pass


def _tokens(line):
    col = 0
    for tok in line.split():
        col = line.index(tok, col)
        yield tok, col + 1
        col += len(tok)


def parse_dimacs(text) -> Cnf:
    """Parse DIMACS CNF from a string or text stream.

    A clause-count mismatch against the header only warns; everything else
    malformed raises :class:`DimacsError` with line and column.
    """
    if not isinstance(text, str):
        text = text.read()
    n = declared_m = None
    clauses = []
    current = []
    last_pos = (1, 1)
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.rstrip("\r\n")
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("%"):
            break
        if stripped.startswith("p"):
            if n is not None:
                raise DimacsError("duplicate header", lineno, line.index("p") + 1)
            fields = stripped.split()
            if len(fields) != 4 or fields[0] != "p" or fields[1] != "cnf":
                raise DimacsError(f"malformed header {stripped!r}", lineno, 1)
            try:
                n, declared_m = int(fields[2]), int(fields[3])
            except ValueError:
                raise DimacsError(f"malformed header {stripped!r}", lineno, 1) from None
            if n < 0 or declared_m < 0:
                raise DimacsError("negative count in header", lineno, 1)
            continue
        for tok, col in _tokens(line):
            if n is None:
                raise DimacsError("clause before header", lineno, col)
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"non-integer token {tok!r}", lineno, col) from None
            last_pos = (lineno, col)
            if lit == 0:
                clauses.append(current)
                current = []
            elif abs(lit) > n:
                raise DimacsError(f"variable {abs(lit)} exceeds n={n}", lineno, col)
            else:
                current.append(lit)
    if n is None:
        raise DimacsError("missing 'p cnf' header", 1, 1)
    if current:
        raise DimacsError("unterminated clause", *last_pos)
    if len(clauses) != declared_m:
        warnings.warn(f"header declares {declared_m} clauses, found {len(clauses)}",
                      DimacsWarning, stacklevel=2)
    return Cnf(n, clauses)


def write_dimacs(f: Cnf) -> str:
    lines = [f"p cnf {f.n} {f.m}"]
    lines += [" ".join(map(str, c + (0,))) for c in f.clauses]
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------- transformations

def _is_tautological(clause):
    s = set(clause)
    return any(-lit in s for lit in s)


def normalize(f: Cnf) -> Cnf:
    """Drop tautological and repeated clauses (literals are already unique)."""
    seen = set()
    kept = []
    for c in f.clauses:
        if _is_tautological(c):
            continue
        key = frozenset(c)
        if key not in seen:
            seen.add(key)
            kept.append(c)
    return Cnf(f.n, kept, f.variables)


def _check_var(f, v):
    if not 1 <= v <= f.n:
        raise ValueError(f"variable {v} out of range 1..{f.n}")


def restrict(f: Cnf, v: int, value: bool) -> Cnf:
    """Cofactor of ``f`` with x_v fixed to ``value``; v leaves the variable set."""
    _check_var(f, v)
    true_lit = v if value else -v
    out = []
    for c in f.clauses:
        if true_lit in c:
            continue
        out.append(tuple(lit for lit in c if lit != -true_lit))
    return Cnf(f.n, out, f.variables - {v})


def clause_split(f: Cnf, v: int):
    """Split ``f`` around variable ``v`` into ``(s0, s1p, s2p)``.

    ``s0`` holds the clauses without v; ``s1p`` the clauses that had x_v with
    it removed; ``s2p`` those that had ~x_v with it removed. Hence
    ``restrict(f, v, False) == s0 & s1p`` and ``restrict(f, v, True) == s0 & s2p``.
    Clauses containing both polarities of v are satisfied on both branches
    and are dropped.
    """
    _check_var(f, v)
    s0, s1p, s2p = [], [], []
    for c in f.clauses:
        pos, neg = v in c, -v in c
        if pos and neg:
            continue
        rest = tuple(lit for lit in c if abs(lit) != v)
        if pos:
            s1p.append(rest)
        elif neg:
            s2p.append(rest)
        else:
            s0.append(c)
    variables = f.variables - {v}
    return Cnf(f.n, s0, variables), Cnf(f.n, s1p, variables), Cnf(f.n, s2p, variables)


def conjoin(*problems: Cnf) -> Cnf:
    """Concatenate the clause lists of problems over the same ``n``."""
    first = problems[0]
    if any(p.n != first.n for p in problems):
        raise ValueError("conjoin needs a common variable count")
    variables = frozenset().union(*(p.variables for p in problems))
    return Cnf(first.n, [c for p in problems for c in p.clauses], variables)


# ----------------------------------------------------------------- generator

def random_ksat(n, m, k, seed) -> Cnf:
    """Uniform random k-SAT: k distinct variables per clause, fair polarities.

    Duplicate clauses may occur. Output is a pure function of the arguments
    for a given numpy ``PCG64`` implementation.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if m < 0:
        raise ValueError("m must be >= 0")
    rng = np.random.default_rng(int(seed) & 0xFFFFFFFFFFFFFFFF)
    clauses = []
    for _ in range(m):
        vs = rng.choice(n, size=k, replace=False) + 1
        signs = rng.integers(0, 2, size=k)
        clauses.append(tuple(int(v) if s else -int(v) for v, s in zip(vs, signs)))
    return Cnf(n, clauses)

