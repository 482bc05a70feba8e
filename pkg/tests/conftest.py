import itertools
import random

import pytest

from clifsat.cnf import FIVE_CLAUSE_UNSAT, Cnf, assignment_from_index, evaluate


@pytest.fixture
def five():
    return FIVE_CLAUSE_UNSAT


def truth_set(f):
    """Satisfying assignment indices by direct evaluation (the table oracle)."""
    return {a for a in range(1 << f.n) if evaluate(f, assignment_from_index(a, f.n))}


def random_cnf(rng, n, m=None, kmax=3, allow_taut=False):
    """Random clause list of mixed widths, optionally with tautological clauses."""
    if m is None:
        m = rng.randint(0, 3 * n)
    clauses = []
    for _ in range(m):
        k = rng.randint(1, min(kmax, n))
        vs = rng.sample(range(1, n + 1), k)
        c = [v if rng.random() < 0.5 else -v for v in vs]
        if allow_taut and rng.random() < 0.1:
            c.append(-c[0])
        clauses.append(c)
    return Cnf(n, clauses)


def all_clauses(n, kmax, with_empty=True):
    """Every non-tautological clause over 1..n of width <= kmax."""
    out = [()] if with_empty else []
    for k in range(1, kmax + 1):
        for vs in itertools.combinations(range(1, n + 1), k):
            for signs in itertools.product((1, -1), repeat=k):
                out.append(tuple(s * v for s, v in zip(signs, vs)))
    return out


@pytest.fixture
def rng():
    return random.Random(20261016)


# --------------------------------------------------------------- acceptance

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, label): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call":
        return
    num, label = mark.args
    detail = "; ".join(str(v) for k, v in item.user_properties if k == "detail")
    _criteria[num] = (label, report.passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        label, ok, detail = _criteria[num]
        line = f"criterion {num:>2} {'PASS' if ok else 'FAIL'}  {label}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail else ""))
