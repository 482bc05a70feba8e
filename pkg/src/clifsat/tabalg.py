"""The Abelian subalgebra spanned by the primitive idempotents, as truth tables.

An element is a vector of 2^n coefficients, one per primitive idempotent.
Index ``a`` stands for the assignment with x_i = bit ``i-1`` of ``a``, so
variable 1 is the least significant bit. Because the basis multiplies
pointwise, the algebra product is the componentwise product.

Two concrete types:

* :class:`IdemSet` -- an idempotent (all coefficients 0/1), stored as a
  Python int used as a 2^n-bit set. Product is ``&``, ``1 - s`` is the
  masked complement.
* :class:`TableElem` -- a general element with signed int64 coefficients,
  used for sums and differences that leave the idempotents.

Reflection by the odd generator of variable i permutes the basis by
flipping bit ``i-1`` of the index; :mod:`clifsat.clifford` checks that
against real matrix conjugation.
"""
import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import limits
from .cnf import Cnf, as_int, assignment_from_index


@lru_cache(maxsize=None)
def _full(n):
    return (1 << (1 << n)) - 1


@lru_cache(maxsize=256)
def _var_mask(n, v):
    """Bits of the indices where x_v is true."""
    size = 1 << n
    half = 1 << (v - 1)
    m = ((1 << half) - 1) << half
    width = 2 * half
    while width < size:
        m |= m << width
        width *= 2
    return m


@dataclass(frozen=True)
class IdemSet:
    n: int
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits > _full(self.n):
            raise ValueError("bit vector does not fit 2^n entries")

    @classmethod
    def zero(cls, n):
        return cls(n, 0)

    @classmethod
    def one(cls, n):
        return cls(n, _full(n))

    def _same(self, other):
        if not isinstance(other, IdemSet) or other.n != self.n:
            raise ValueError("dimension mismatch")

    def __mul__(self, other):
        self._same(other)
        return IdemSet(self.n, self.bits & other.bits)

    __and__ = __mul__

    def __or__(self, other):
        self._same(other)
        return IdemSet(self.n, self.bits | other.bits)

    def __invert__(self):
        return IdemSet(self.n, self.bits ^ _full(self.n))

    def __contains__(self, index):
        return bool((self.bits >> index) & 1)

    def is_zero(self):
        return self.bits == 0

    def is_one(self):
        return self.bits == _full(self.n)

    def to_table(self):
        limits.check("table", self.n)
        size = 1 << self.n
        raw = self.bits.to_bytes(max(1, size // 8), "little")
        coeff = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
        return TableElem(self.n, coeff[:size].astype(np.int64))

    def to_json(self):
        digits = max(1, (1 << self.n) // 4)
        return {"n": self.n, "bits_hex": format(self.bits, f"0{digits}x")}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["n"]), int(obj["bits_hex"], 16))


class TableElem:
    """General element: 2^n signed coefficients (read-only int64 array)."""

    __slots__ = ("n", "coeff")

    def __init__(self, n, coeff):
        limits.check("table", n)
        coeff = np.array(coeff, dtype=np.int64)
        if coeff.shape != (1 << n,):
            raise ValueError(f"expected {1 << n} coefficients, got {coeff.shape}")
        coeff.setflags(write=False)
        self.n = n
        self.coeff = coeff

    @classmethod
    def one(cls, n):
        return cls(n, np.ones(1 << n, dtype=np.int64))

    def __eq__(self, other):
        if isinstance(other, IdemSet):
            other = other.to_table()
        if not isinstance(other, TableElem):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.coeff, other.coeff)

    __hash__ = None

    def __repr__(self):
        return f"TableElem(n={self.n}, coeff={self.coeff.tolist()})"

    def to_idemset(self):
        if not is_idempotent(self):
            raise ValueError("element is not an idempotent")
        packed = np.packbits(self.coeff.astype(np.uint8), bitorder="little")
        return IdemSet(self.n, int.from_bytes(packed.tobytes(), "little"))

    def to_json(self):
        return {"n": self.n, "coeffs": self.coeff.tolist()}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["n"]), obj["coeffs"])


def _table(x):
    return x.to_table() if isinstance(x, IdemSet) else x


def _pair(x, y):
    x, y = _table(x), _table(y)
    if x.n != y.n:
        raise ValueError(f"dimension mismatch: {x.n} vs {y.n}")
    return x, y


_LIMIT = 1 << 62


def _peak(c):
    return int(np.abs(c).max(initial=0))


def alg_add(x, y):
    x, y = _pair(x, y)
    if _peak(x.coeff) + _peak(y.coeff) >= _LIMIT:
        raise OverflowError("coefficient overflow in add")
    return TableElem(x.n, x.coeff + y.coeff)


def alg_sub(x, y):
    x, y = _pair(x, y)
    if _peak(x.coeff) + _peak(y.coeff) >= _LIMIT:
        raise OverflowError("coefficient overflow in sub")
    return TableElem(x.n, x.coeff - y.coeff)


def alg_mul(x, y):
    if isinstance(x, IdemSet) and isinstance(y, IdemSet):
        return x * y
    x, y = _pair(x, y)
    if _peak(x.coeff) * _peak(y.coeff) >= _LIMIT:
        raise OverflowError("coefficient overflow in mul")
    return TableElem(x.n, x.coeff * y.coeff)


def alg_scale(x, k):
    x = _table(x)
    if _peak(x.coeff) * abs(k) >= _LIMIT:
        raise OverflowError("coefficient overflow in scale")
    return TableElem(x.n, x.coeff * k)


def complement(s: IdemSet) -> IdemSet:
    return ~s


def is_idempotent(x) -> bool:
    if isinstance(x, IdemSet):
        return True
    return bool(np.isin(x.coeff, (0, 1)).all())


def literal_elem(n, lit) -> IdemSet:
    """The idempotent of a literal: x_v -> {a : bit v-1 set}, ~x_v -> complement."""
    limits.check("idemset", n)
    lit = as_int(lit)
    if abs(lit) > n:
        raise ValueError(f"literal {lit} out of range for n={n}")
    m = _var_mask(n, abs(lit))
    return IdemSet(n, m if lit > 0 else m ^ _full(n))


def clause_z(n, clause) -> IdemSet:
    """Product of the complemented literals of a clause (its falsifying set)."""
    z = _full(n)
    for lit in clause:
        z &= literal_elem(n, -as_int(lit)).bits
    return IdemSet(n, z)


def compile_cnf(f: Cnf) -> IdemSet:
    """Product over clauses of (1 - z_j); bit a is set iff a satisfies f."""
    limits.check("idemset", f.n)
    full = _full(f.n)
    s = full
    for c in f.clauses:
        s &= clause_z(f.n, c).bits ^ full
    return IdemSet(f.n, s)


def delta_of(s: IdemSet) -> IdemSet:
    return ~s


def reflect(x, i):
    """Conjugation by the odd generator of variable i: swap x_i and ~x_i."""
    if not 1 <= i <= x.n:
        raise ValueError(f"variable {i} out of range 1..{x.n}")
    if isinstance(x, IdemSet):
        shift = 1 << (i - 1)
        hi = _var_mask(x.n, i)
        lo = hi ^ _full(x.n)
        return IdemSet(x.n, ((x.bits & lo) << shift) | ((x.bits & hi) >> shift))
    perm = np.arange(1 << x.n) ^ (1 << (i - 1))
    return TableElem(x.n, x.coeff[perm])


def is_symmetric_all(s) -> bool:
    """Invariant under every odd generator (even ones act the same way)."""
    return all(reflect(s, i) == s for i in range(1, s.n + 1))


def project(x, lit):
    """Component of ``x`` in the subalgebra picked out by ``lit``."""
    lit = as_int(lit)
    if abs(lit) > x.n:
        raise ValueError(f"literal {lit} out of range for n={x.n}")
    return alg_mul(literal_elem(x.n, lit), x)


def dnf_terms(s: IdemSet):
    """Satisfying assignments, one per set bit, in index order."""
    out = []
    bits = s.bits
    while bits:
        low = bits & -bits
        out.append(assignment_from_index(low.bit_length() - 1, s.n))
        bits ^= low
    return out


def first_term(s: IdemSet):
    """Lowest-index satisfying assignment, or None."""
    if not s.bits:
        return None
    return assignment_from_index((s.bits & -s.bits).bit_length() - 1, s.n)


def count_models(s: IdemSet) -> int:
    return s.bits.bit_count()


def det_delta(s: IdemSet) -> int:
    # Delta is diagonal with 0/1 entries: its determinant is 1 iff Delta == 1.
    return int(delta_of(s).is_one())


def satisfiable_via_det(s: IdemSet) -> bool:
    return det_delta(s) == 0


__all__ = [
    "IdemSet", "TableElem", "alg_add", "alg_sub", "alg_mul",
    "alg_scale", "complement", "is_idempotent", "literal_elem", "clause_z",
    "compile_cnf", "delta_of", "reflect", "is_symmetric_all", "project",
    "dnf_terms", "first_term", "count_models", "det_delta", "satisfiable_via_det",
]
