"""Size guards for the dense representations.

Every dense structure here is exponential in the variable count, so each
kind has its own ceiling. ``CLIFSAT_MAX_N`` (or :func:`set_max_n`) replaces
all of them with a single value.
"""
import os

DEFAULTS = {
    "idemset": 26,   # 2^26 bits = 8 MiB
    "table": 20,     # 2^20 int64 coefficients
    "clifford": 7,   # 128 x 128 exact matrices
    "oracle": 24,
}

_override = None


class GuardError(ValueError):
    """Raised when a request exceeds a size guard."""


def set_max_n(n):
    """Override every guard in-process; ``None`` restores env/defaults."""
    global _override
    _override = None if n is None else int(n)


def max_n(kind):
    if _override is not None:
        return _override
    env = os.environ.get("CLIFSAT_MAX_N")
    if env:
        return int(env)
    return DEFAULTS[kind]


def check(kind, n):
    limit = max_n(kind)
    if n > limit:
        raise GuardError(f"n={n} exceeds the {kind} guard ({limit}); "
                         f"raise it with --max-n or CLIFSAT_MAX_N")
