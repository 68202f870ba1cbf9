import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from clusterlab.fuzz import random_skew_symmetrizable
from clusterlab.matrix import ExchangeMatrix

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def skew_symmetrizable(draw, max_rank=4, max_entry=3, max_frozen=2):
    """Matrices from the fuzz generator, driven by a hypothesis-chosen seed."""
    seed = draw(st.integers(0, 2**32 - 1))
    return random_skew_symmetrizable(random.Random(seed), None, max_rank, max_entry, max_frozen)


@st.composite
def any_matrix(draw, max_rank=4, max_entry=4, max_frozen=3):
    """Sign-skew-symmetric integer matrices, not necessarily skew-symmetrizable."""
    n = draw(st.integers(1, max_rank))
    f = draw(st.integers(0, max_frozen))
    ent = st.integers(-max_entry, max_entry)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a = draw(ent)
            rows[i][j] = a
            rows[j][i] = 0 if a == 0 else -(a // abs(a)) * draw(st.integers(1, max_entry))
    rows += [[draw(ent) for _ in range(n)] for _ in range(f)]
    return ExchangeMatrix(n, f, tuple(map(tuple, rows)))


@pytest.fixture
def a2():
    return ExchangeMatrix.from_rows([[0, 1], [-1, 0]])


_ACCEPTANCE: list[str] = []


@pytest.fixture
def verdict(capsys):
    """Record and print one PASS/FAIL line for an acceptance criterion."""

    def emit(number: int, passed: bool, detail: str) -> None:
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        _ACCEPTANCE.append(line)
        with capsys.disabled():
            print("\n" + line)

    return emit


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
