import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from entangle_lab.linalg import PureState

settings.register_profile(
    "repo", deadline=None, max_examples=40, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


def random_state(rng, dims, support=None) -> PureState:
    dims = tuple(dims)
    v = rng.normal(size=int(np.prod(dims))) + 1j * rng.normal(size=int(np.prod(dims)))
    if support is not None:
        mask = np.zeros(v.size, dtype=bool)
        mask[rng.choice(v.size, size=support, replace=False)] = True
        v = np.where(mask, v, 0)
    return PureState.from_dense(v, dims, normalized=True)


def random_sl2(rng) -> np.ndarray:
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    return m / np.sqrt(np.linalg.det(m))


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
