import numpy as np
import pytest

from ametensor.gf import GF
from ametensor.linalg import FFMatrix

F4 = GF(2, 2, [1, 1, 1])
F5 = GF(5)
F7 = GF(7)
F8 = GF(2, 3)
F11 = GF(11)

# omega = code 2 in GF(4), omega^2 = omega + 1 = code 3
OMEGA4 = [[1, 1, 1], [1, 2, 3], [1, 3, 2]]
GF5_SYM = [[1, 1, 1], [1, 2, -2], [1, -2, -1]]
YB_GF5 = {"A": [[3, 4], [3, 1]], "B": [[4, 1], [1, 3]], "C": [[3, 1], [3, 4]]}
YB_PRODUCT = [[2, 1, 1], [2, 2, 3], [1, 4, 2]]

GF7_FIRST = [[1, 1, 1, 1], [1, 2, 3, 5], [1, 3, 2, 6], [1, 6, 5, 4]]
GF7_SECOND = [[1, 1, 1, 1], [1, 3, 4, 5], [1, 4, 5, 3], [1, 5, 3, 4]]
GF11_FIRST = [[1, 1, 1, 1], [1, 2, 3, 4], [1, 3, 2, 9], [1, 7, 8, 5]]
PERMUTED_GF11 = [[1, 7, 8, 5], [1, 1, 1, 1], [1, 2, 3, 4], [1, 3, 2, 9]]

CAUCHY_X = [0, 6, 1, 4]
CAUCHY_Y = [5, 7, 3, 2]
CAUCHY_GF8 = [[2, 4, 6, 5], [6, 1, 2, 7], [7, 3, 5, 6], [1, 6, 4, 3]]

GATES8 = {
    "gf7_first": {
        (1, 2): [[1, 1], [6, 1]],
        (1, 3): [[1, 1], [6, 1]],
        (1, 4): [[1, 1], [5, 1]],
        (2, 3): [[1, 5], [4, 1]],
        (2, 4): [[4, 5], [3, 1]],
        (3, 4): [[1, 6], [2, 4]],
    },
    "gf7_second": {
        (1, 2): [[1, 1], [3, 1]],
        (1, 3): [[1, 1], [2, 1]],
        (1, 4): [[1, 1], [5, 1]],
        (2, 3): [[1, 0], [0, 1]],
        (2, 4): [[6, 5], [3, 1]],
        (3, 4): [[4, 3], [4, 4]],
    },
    # x -> 2, x+1 -> 3, x^2+1 -> 5, x^2+x -> 6, x^2+x+1 -> 7
    "gf8_cauchy": {
        (1, 2): [[1, 2], [3, 1]],
        (1, 3): [[1, 3], [5, 1]],
        (1, 4): [[2, 5], [5, 1]],
        (2, 3): [[1, 6], [6, 1]],
        (2, 4): [[5, 7], [5, 1]],
        (3, 4): [[1, 6], [6, 3]],
    },
    "gf11_first": {
        (1, 2): [[1, 1], [8, 1]],
        (1, 3): [[1, 1], [10, 1]],
        (1, 4): [[1, 1], [3, 1]],
        (2, 3): [[1, 8], [0, 1]],
        (2, 4): [[3, 4], [8, 1]],
        (3, 4): [[4, 9], [3, 5]],
    },
}

SOURCES8 = {
    "gf7_first": (F7, GF7_FIRST),
    "gf7_second": (F7, GF7_SECOND),
    "gf8_cauchy": (F8, CAUCHY_GF8),
    "gf11_first": (F11, GF11_FIRST),
}

TERNARY_ARRAY = [
    [0, 0, 0, 0],
    [0, 1, 1, 2],
    [0, 2, 2, 1],
    [1, 0, 1, 1],
    [1, 1, 2, 0],
    [1, 2, 0, 2],
    [2, 0, 2, 2],
    [2, 1, 0, 1],
    [2, 2, 1, 0],
]


def mat(field, rows):
    return FFMatrix.from_rows(field, rows)


def random_matrix(field, n, rng, nonzero=False):
    low = 1 if nonzero else 0
    return FFMatrix.from_rows(field, rng.integers(low, field.order, size=(n, n)).tolist())


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def g5():
    return mat(F5, GF5_SYM)


@pytest.fixture
def omega4():
    return mat(F4, OMEGA4)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[2].rstrip(":"))):
        terminalreporter.write_line(line)
