
import numpy as np
import pytest
from hypothesis import strategies as st

from heytingqv.algebra import Poset
from heytingqv.formula import BOT, And, Imp, Or, Var


VARS = ["p", "q", "r", "p1", "q2"]


def formulas(max_leaves: int = 12):
    leaves = st.one_of(st.sampled_from(VARS).map(Var), st.just(BOT))
    return st.recursive(
        leaves,
        lambda sub: st.one_of(st.builds(And, sub, sub), st.builds(Or, sub, sub), st.builds(Imp, sub, sub)),
        max_leaves=max_leaves,
    )


@st.composite
def posets(draw, max_nodes: int = 8):
    """Random finite posets: a random DAG over a fixed linear order, transitively closed."""
    n = draw(st.integers(1, max_nodes))
    bits = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    leq = np.eye(n, dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            leq[i, j] = bits[i * n + j]
    for k in range(n):
        leq |= np.outer(leq[:, k], leq[k, :])
    return Poset(leq)


@pytest.fixture(scope="session")
def fig():
    from heytingqv.catalog import catalog
    return {name: catalog(name) for name in ("C5p", "C7p", "C10p", "C12p", "C16")}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
