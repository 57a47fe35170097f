import numpy as np
import pytest
from scipy.stats import unitary_group

from qdiscord import linalg

ACCEPTANCE_RESULTS = {}


def random_density(rng, dim=4, rank=None):
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_pure(rng, dim=4):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_unitary(rng, dim=2):
    return unitary_group.rvs(dim, random_state=rng)


def random_hermitian(rng, dim):
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return x + x.conj().T


@pytest.fixture
def rng():
    return np.random.default_rng(20181308)


@pytest.fixture
def bell_phi():
    return linalg.projector((linalg.ket("00") + linalg.ket("11")) / np.sqrt(2))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: (int(k.split(".")[0]), k)):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
