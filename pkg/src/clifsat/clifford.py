"""Dense exact matrix model of Cl(R^{n,n}) for small n.

Matrices are 2^n x 2^n with dyadic-rational entries, stored as an integer
numerator array (Python ints, object dtype) over a power-of-two
denominator. Generators come from a real Jordan-Wigner ladder:

    gamma_{2i-1} = Z x ... x Z x X x 1 x ... x 1
    gamma_{2i}   = Z x ... x Z x J x 1 x ... x 1      J = [[0, 1], [-1, 0]]

with the Pauli-like factor in slot i. Slot 1 is the least significant bit
of the row index so that q_i p_i lands on the diagonal entries where x_i is
true, matching the index convention of :mod:`clifsat.tabalg`.
"""
import itertools
import json
import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Optional

import numpy as np

from . import limits
from .tabalg import IdemSet, TableElem, literal_elem, reflect


class CliffordElem:
    """Matrix ``num / 2**exp`` with ``num`` an object array of ints."""

    __slots__ = ("n", "num", "exp")

    def __init__(self, n, num, exp=0):
        num = np.array(num, dtype=object)
        size = 1 << n
        if num.shape != (size, size):
            raise ValueError(f"expected a {size}x{size} matrix, got {num.shape}")
        while exp > 0 and all(v % 2 == 0 for v in num.flat):
            num = num // 2
            exp -= 1
        num.setflags(write=False)
        self.n, self.num, self.exp = n, num, exp

    @classmethod
    def identity(cls, n):
        return cls(n, _ints(np.eye(1 << n, dtype=np.int64)))

    @classmethod
    def zero(cls, n):
        return cls(n, _ints(np.zeros((1 << n, 1 << n), dtype=np.int64)))

    def _align(self, other):
        if not isinstance(other, CliffordElem) or other.n != self.n:
            raise ValueError("dimension mismatch")
        e = max(self.exp, other.exp)
        return self.num * (1 << (e - self.exp)), other.num * (1 << (e - other.exp)), e

    def __add__(self, other):
        a, b, e = self._align(other)
        return CliffordElem(self.n, a + b, e)

    def __sub__(self, other):
        a, b, e = self._align(other)
        return CliffordElem(self.n, a - b, e)

    def __neg__(self):
        return CliffordElem(self.n, -self.num, self.exp)

    def __matmul__(self, other):
        if not isinstance(other, CliffordElem) or other.n != self.n:
            raise ValueError("dimension mismatch")
        return CliffordElem(self.n, self.num.dot(other.num), self.exp + other.exp)

    __mul__ = __matmul__

    def half(self):
        return CliffordElem(self.n, self.num, self.exp + 1)

    def scale(self, k):
        return CliffordElem(self.n, self.num * int(k), self.exp)

    def __eq__(self, other):
        if not isinstance(other, CliffordElem):
            return NotImplemented
        return (self.n == other.n and self.exp == other.exp
                and np.array_equal(self.num, other.num))

    __hash__ = None

    def is_zero(self):
        return not any(self.num.flat)

    def is_diagonal(self):
        return not any(v for (r, c), v in np.ndenumerate(self.num) if r != c)

    def diagonal(self):
        return [Fraction(int(v), 1 << self.exp) for v in np.diagonal(self.num)]

    def __repr__(self):
        return f"CliffordElem(n={self.n}, exp={self.exp}, num={self.num.tolist()})"


def _ints(a):
    return np.array([[int(v) for v in row] for row in a], dtype=object)


def anticomm(a, b):
    return a @ b + b @ a


def comm(a, b):
    return a @ b - b @ a


_I2 = np.array([[1, 0], [0, 1]])
_Z = np.array([[1, 0], [0, -1]])
_X = np.array([[0, 1], [1, 0]])
_J = np.array([[0, 1], [-1, 0]])


def _ladder(n, i, factor):
    # np.kron puts its first argument on the high bits, so list slot n first
    slots = [_Z] * (i - 1) + [factor] + [_I2] * (n - i)
    return reduce(np.kron, reversed(slots), np.array([[1]]))


def build_generators(n):
    """The 2n generators; gamma_i^2 = (-1)^(i+1), distinct ones anticommute."""
    limits.check("clifford", n)
    if n < 1:
        raise ValueError("need n >= 1")
    return _generators(n)


@lru_cache(maxsize=None)
def _generators(n):
    gens = []
    for i in range(1, n + 1):
        gens.append(CliffordElem(n, _ints(_ladder(n, i, _X))))
        gens.append(CliffordElem(n, _ints(_ladder(n, i, _J))))
    return tuple(gens)


def witt_basis(gens):
    """p_i = (g_{2i-1} + g_{2i})/2, q_i = (g_{2i-1} - g_{2i})/2."""
    ps = [(gens[2 * i] + gens[2 * i + 1]).half() for i in range(len(gens) // 2)]
    qs = [(gens[2 * i] - gens[2 * i + 1]).half() for i in range(len(gens) // 2)]
    return ps, qs


def identity_and_omega(n):
    """Return (prod {q_i, p_i}, prod [q_i, p_i])."""
    ps, qs = witt_basis(build_generators(n))
    one = reduce(lambda acc, pq: acc @ anticomm(pq[1], pq[0]), zip(ps, qs),
                 CliffordElem.identity(n))
    omega = reduce(lambda acc, pq: acc @ comm(pq[1], pq[0]), zip(ps, qs),
                   CliffordElem.identity(n))
    return one, omega


def volume_element(n):
    gens = build_generators(n)
    return reduce(lambda a, b: a @ b, gens)


@lru_cache(maxsize=None)
def primitive_idempotents(n):
    """The 2^n terms of the expanded product of anticommutators.

    Term ``a`` picks q_i p_i where bit i-1 of ``a`` is set and p_i q_i
    elsewhere, i.e. the basis element of the assignment with index ``a``.
    """
    ps, qs = witt_basis(build_generators(n))
    out = []
    for a in range(1 << n):
        term = CliffordElem.identity(n)
        for i in range(n):
            psi = qs[i] @ ps[i] if (a >> i) & 1 else ps[i] @ qs[i]
            term = term @ psi
        out.append(term)
    return tuple(out)


def embed_table(x) -> CliffordElem:
    """Linear map sending each truth-table basis vector to its idempotent."""
    if isinstance(x, IdemSet):
        x = x.to_table()
    limits.check("clifford", x.n)
    basis = primitive_idempotents(x.n)
    acc = CliffordElem.zero(x.n)
    for a, c in enumerate(x.coeff.tolist()):
        if c:
            acc = acc + basis[a].scale(c)
    return acc


def generator_inverse(n, i):
    g = build_generators(n)[i - 1]
    return g if i % 2 == 1 else -g


def conjugate(x: CliffordElem, i: int) -> CliffordElem:
    """gamma_i x gamma_i^{-1} for 1 <= i <= 2n."""
    if not 1 <= i <= 2 * x.n:
        raise ValueError(f"generator index {i} out of range 1..{2 * x.n}")
    return build_generators(x.n)[i - 1] @ x @ generator_inverse(x.n, i)


# ------------------------------------------------------------------- report

@dataclass
class Check:
    identity: str
    status: str
    counterexample: Optional[str] = None


def _record(report, name, failures):
    report.append(Check(name, "fail" if failures else "pass",
                        "; ".join(failures[:5]) if failures else None))


def verify_relations(n, samples=(), tables=(), seed=0, random_samples=20):
    """Machine-check the algebra relations at size n.

    ``samples`` are extra IdemSets for the centrality check; ``tables`` are
    extra TableElems for the reflect/conjugate comparison. ``random_samples``
    random ones of each are drawn from ``seed``.
    """
    gens = build_generators(n)
    one = CliffordElem.identity(n)
    zero = CliffordElem.zero(n)
    report = []

    bad = []
    for a, b in itertools.product(range(1, 2 * n + 1), repeat=2):
        expect = one.scale(2 * (-1) ** (a + 1)) if a == b else zero
        if anticomm(gens[a - 1], gens[b - 1]) != expect:
            bad.append(f"g{a},g{b}")
    _record(report, "generator anticommutation", bad)

    ps, qs = witt_basis(gens)
    bad = []
    for i, j in itertools.product(range(n), repeat=2):
        if anticomm(ps[i], ps[j]) != zero:
            bad.append(f"{{p{i + 1},p{j + 1}}}")
        if anticomm(qs[i], qs[j]) != zero:
            bad.append(f"{{q{i + 1},q{j + 1}}}")
        if anticomm(ps[i], qs[j]) != (one if i == j else zero):
            bad.append(f"{{p{i + 1},q{j + 1}}}")
    for i in range(n):
        if ps[i] @ ps[i] != zero or qs[i] @ qs[i] != zero:
            bad.append(f"null square {i + 1}")
    _record(report, "Witt basis relations", bad)

    ident, omega = identity_and_omega(n)
    _record(report, "identity as product of anticommutators",
            [] if ident == one else ["prod {q_i,p_i} != 1"])
    _record(report, "volume element as product of commutators",
            [] if omega == volume_element(n) else ["prod [q_i,p_i] != omega"])

    terms = primitive_idempotents(n)
    bad = []
    for a, t in enumerate(terms):
        if t @ t != t:
            bad.append(f"term {a} not idempotent")
        if not t.is_diagonal() or sum(t.diagonal()) != 1:
            bad.append(f"term {a} not a single diagonal unit")
    for a, b in itertools.combinations(range(len(terms)), 2):
        if not (terms[a] @ terms[b]).is_zero():
            bad.append(f"terms {a},{b} not orthogonal")
    if reduce(lambda s, t: s + t, terms) != one:
        bad.append("terms do not sum to 1")
    _record(report, f"expansion into {len(terms)} primitive idempotents", bad)

    bad = []
    for i in range(1, n + 1):
        rho = embed_table(literal_elem(n, i))
        rho_bar = embed_table(literal_elem(n, -i))
        if rho != qs[i - 1] @ ps[i - 1]:
            bad.append(f"rho{i} != q{i}p{i}")
        for j in range(1, 2 * n + 1):
            want = rho_bar if j in (2 * i - 1, 2 * i) else rho
            if conjugate(rho, j) != want:
                bad.append(f"g{j} on rho{i}")
    _record(report, "literal reflection", bad)

    rng = random.Random(seed)
    size = 1 << n
    pool = [IdemSet.zero(n), IdemSet.one(n), *samples]
    pool += [IdemSet(n, rng.getrandbits(size)) for _ in range(random_samples)]
    bad = []
    for s in pool:
        m = embed_table(s)
        invariant = all(conjugate(m, j) == m for j in range(1, 2 * n + 1))
        if invariant != (s.is_zero() or s.is_one()):
            bad.append(f"bits={s.bits:#x} invariant={invariant}")
    _record(report, "centrality: invariant iff 0 or 1", bad)

    pool = list(tables)
    pool += [TableElem(n, [rng.randint(-3, 3) for _ in range(size)])
             for _ in range(random_samples)]
    bad = []
    for x in pool:
        m = embed_table(x)
        for i in range(1, n + 1):
            if embed_table(reflect(x, i)) != conjugate(m, 2 * i - 1):
                bad.append(f"coeffs={x.coeff.tolist()} var {i}")
    _record(report, "reflect matches conjugation", bad)
    return report


def report_json(report):
    return json.dumps([{k: v for k, v in asdict(c).items() if v is not None}
                       for c in report], indent=2)
