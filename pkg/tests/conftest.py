import os
from pathlib import Path

import numpy as np
import pytest

DATA = Path(__file__).parent / "data"


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def iris_path():
    return DATA / "iris.csv"


@pytest.fixture
def seeds_path():
    """UCI Seeds file supplied by the user through ``GQHT_SEEDS_CSV``."""
    path = os.environ.get("GQHT_SEEDS_CSV")
    if not path or not Path(path).exists():
        pytest.skip("set GQHT_SEEDS_CSV to a local copy of seeds_dataset.txt to run the Seeds checks")
    return Path(path)


def random_state(rng, m):
    v = rng.normal(size=1 << m) + 1j * rng.normal(size=1 << m)
    return v / np.linalg.norm(v)


def ucry_reference(controls, target, thetas, m):
    """Dense ``sum_j |j><j|_controls (x) RY(theta_j)_target`` built from Kronecker products."""
    proj = (np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
    n = len(controls)
    u = np.zeros((1 << m, 1 << m), dtype=complex)
    for j, th in enumerate(thetas):
        factors = [np.eye(2)] * m
        for k, q in enumerate(controls):
            factors[q] = proj[(j >> (n - 1 - k)) & 1]
        c, s = np.cos(th / 2), np.sin(th / 2)
        factors[target] = np.array([[c, -s], [s, c]])
        term = np.ones((1, 1))
        for f in factors:
            term = np.kron(term, f)
        u += term
    return u
