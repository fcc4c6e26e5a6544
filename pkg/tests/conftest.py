import itertools

import pytest

from eacount.ea import EAElement, apply, enumerate_gamma
from eacount.functions import FuncTable, make_rng


def brute_orbits(q, n, m):
    """Orbits of the function space by applying every group element (no generators)."""
    group = list(enumerate_gamma(q, n, m))
    seen, orbits = set(), []
    for t in itertools.product(range(q**m), repeat=q**n):
        if t in seen:
            continue
        F = FuncTable(q, n, m, t)
        orb = {apply(g, F).table for g in group}
        seen |= orb
        orbits.append(orb)
    return orbits


def brute_stabilizer(F):
    return [g for g in enumerate_gamma(*F.dims) if apply(g, F) == F]


@pytest.fixture
def rng():
    return make_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
