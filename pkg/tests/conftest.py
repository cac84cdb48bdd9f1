import math

import numpy as np
import pytest
from hypothesis import strategies as st

from slabarea import GaussMap

ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, ok, detail in sorted(ACCEPTANCE_RESULTS):
        mark = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{mark}] criterion {number:2d} {name}: {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240617)


finite = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)


@st.composite
def gauss_maps(draw, max_k=4, n_min=1, n_max=4, f_min=8.0, f_max=16.0):
    n = draw(st.integers(n_min, n_max))
    f = draw(st.floats(min_value=f_min, max_value=f_max))
    ks = draw(st.lists(st.integers(-max_k, max_k), max_size=2 * max_k + 1, unique=True))
    coeffs = {k: complex(draw(finite), draw(finite)) for k in ks}
    return GaussMap(n, f, coeffs)


def random_map(rng, n=None, max_k=4, f=None):
    """Plain-numpy random Gauss map for loops that do not need shrinking."""
    if n is None:
        n = int(rng.integers(1, 5))
    if f is None:
        f = float(rng.uniform(8.0, 16.0))
    k_top = int(rng.integers(0, max_k + 1))
    coeffs = {k: complex(*rng.uniform(-1, 1, 2)) for k in range(-k_top, k_top + 1)}
    return GaussMap(n, f, coeffs)


TWO_PI = 2 * math.pi
