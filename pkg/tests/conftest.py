"""
Shared fixtures: golden arrays, seeded randomness, slow-test gating.

Golden rows are listed bottom-up (row j = 1 first) unless the name says
otherwise; the 9x9 and 15x5 tables are kept in their printed top-down
order and flipped here.
"""

import random

import pytest

from facemagic.models import Dims, Labeling


# ============================================================
# Golden Arrays
# ============================================================

# 5x5 HBBL((5,5)), magic value 53
HBBL_5X5_ROWS = [
    [1, 25, 2, 24, 3],
    [23, 4, 22, 5, 21],
    [6, 20, 7, 19, 8],
    [18, 9, 17, 10, 16],
    [11, 15, 12, 14, 13],
]

# VALL_{15,5}(5,5): a 5x5 partial labeling inside P(15,5)
VALL_15X5_ROWS = [
    [1, 73, 6, 68, 11],
    [75, 4, 70, 9, 65],
    [2, 72, 7, 67, 12],
    [74, 5, 69, 10, 64],
    [3, 71, 8, 66, 13],
]

# 9x9 HBBL((3,3,3,3)), magic value 165, printed top row first
HBBL_9X9_TOP_DOWN = [
    [31, 51, 32, 47, 36, 46, 40, 42, 41],
    [53, 30, 52, 34, 48, 35, 44, 39, 43],
    [28, 54, 29, 50, 33, 49, 37, 45, 38],
    [65, 18, 64, 22, 60, 23, 56, 27, 55],
    [16, 66, 17, 62, 21, 61, 25, 57, 26],
    [68, 15, 67, 19, 63, 20, 59, 24, 58],
    [4, 78, 5, 74, 9, 73, 13, 69, 14],
    [80, 3, 79, 7, 75, 8, 71, 12, 70],
    [1, 81, 2, 77, 6, 76, 10, 72, 11],
]

# 3-horizontal alternating connected sum of HALL_{15,5}(5,5), magic value 153
SUM_15X5_TOP_DOWN = [
    [11, 65, 12, 64, 13, 53, 24, 52, 25, 51, 36, 40, 37, 39, 38],
    [68, 9, 67, 10, 66, 21, 55, 22, 54, 23, 43, 34, 42, 35, 41],
    [6, 70, 7, 69, 8, 58, 19, 57, 20, 56, 31, 45, 32, 44, 33],
    [73, 4, 72, 5, 71, 16, 60, 17, 59, 18, 48, 29, 47, 30, 46],
    [1, 75, 2, 74, 3, 63, 14, 62, 15, 61, 26, 50, 27, 49, 28],
]

# 3x3 HBBL((3,3)) and VBBL((3,3)), magic value 21
HBBL_3X3_ROWS = [[1, 9, 2], [8, 3, 7], [4, 6, 5]]
VBBL_3X3_ROWS = [[1, 8, 4], [9, 3, 6], [2, 7, 5]]


# ============================================================
# Fixtures
# ============================================================

@pytest.fixture
def hbbl_5x5() -> Labeling:
    return Labeling.from_rows(HBBL_5X5_ROWS)


@pytest.fixture
def hbbl_9x9() -> Labeling:
    return Labeling.from_rows(HBBL_9X9_TOP_DOWN[::-1])


@pytest.fixture
def sum_15x5() -> Labeling:
    return Labeling.from_rows(SUM_15X5_TOP_DOWN[::-1])


@pytest.fixture
def vall_15x5_rows() -> list:
    return [list(row) for row in VALL_15X5_ROWS]


@pytest.fixture
def hbbl_3x3() -> Labeling:
    return Labeling.from_rows(HBBL_3X3_ROWS)


@pytest.fixture
def vbbl_3x3() -> Labeling:
    return Labeling.from_rows(VBBL_3X3_ROWS)


@pytest.fixture
def golden(hbbl_5x5, hbbl_9x9, sum_15x5, hbbl_3x3, vbbl_3x3) -> dict:
    """Every full bicentrally balanced golden labeling, by name."""
    return {
        "hbbl_5x5": hbbl_5x5,
        "hbbl_9x9": hbbl_9x9,
        "sum_15x5": sum_15x5,
        "hbbl_3x3": hbbl_3x3,
        "vbbl_3x3": vbbl_3x3,
    }


@pytest.fixture
def rng(request) -> random.Random:
    """Seeded generator; reproduce a failure with --seed."""
    return random.Random(request.config.getoption("--seed"))


@pytest.fixture
def dims_5x5() -> Dims:
    return Dims(5, 5)


# ============================================================
# Command-line options & markers
# ============================================================

def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20261016, help="seed for randomized tests")
    parser.addoption("--run-slow", action="store_true", default=False, help="run 4x4 and 5x5 enumerations")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="slow enumeration tier (use --run-slow)")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
