import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qslkit.matrixcore import random_density, random_unitary

settings.register_profile(
    "qslkit",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("qslkit")

dims = st.integers(min_value=2, max_value=5)
seeds = st.integers(min_value=0, max_value=2**31 - 1)
alphas_unit = st.sampled_from([0.6, 0.75, 0.9, 1.0])


@st.composite
def states(draw, n=None, full_rank=False):
    """Random density matrix with a random rank."""
    n = draw(dims) if n is None else n
    rank = n if full_rank else draw(st.integers(min_value=1, max_value=n))
    return random_density(n, rank, draw(seeds))


@st.composite
def state_pairs(draw):
    n = draw(dims)
    return draw(states(n)), draw(states(n))


@st.composite
def unitaries(draw, n):
    return random_unitary(n, draw(seeds))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def dm(vec):
    """Pure-state projector ``|v><v|`` for a (not necessarily normalized) vector."""
    v = np.asarray(vec, dtype=complex)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict = {}


def record_criterion(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
