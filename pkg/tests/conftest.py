import itertools

import numpy as np
import pytest

from labelpcor import angle_kernel, build_dataset

BACKENDS = ["numba", "numpy"]


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


def triple_oracle(x, codes):
    """(s1, s2, s3) straight from the triple sums, one angle_kernel call per triple."""
    x = np.asarray(x, dtype=float)
    n = len(x)
    a = np.empty((n, n, n))
    for i, j, l in itertools.product(range(n), repeat=3):
        a[i, j, l] = angle_kernel(x[i], x[j], x[l])
    s1 = a.sum() / n ** 3
    s2 = 0.0
    for k in np.unique(codes):
        idx = np.flatnonzero(codes == k)
        s2 += a[np.ix_(idx, idx, np.arange(n))].sum() / len(idx)
    s2 /= n ** 2
    s3 = sum(np.array_equal(x[i], x[j]) for i in range(n) for j in range(n)) / n ** 2
    return s1, s2, s3


def random_dataset(rng, n, p, k, ties=False):
    if ties:
        x = rng.integers(0, 4, size=(n, p)).astype(float)
    else:
        x = rng.normal(size=(n, p))
    y = rng.integers(0, k, n)
    y[:k] = np.arange(k)  # every class present
    return build_dataset(x, y)


# one line per acceptance criterion, echoed after the run regardless of capture
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
