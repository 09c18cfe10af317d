import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from freeroots import Supergraph  # noqa: E402


@pytest.fixture(scope="session")
def tree6():
    """Six-vertex tree 1-2, 2-3, 2-4, 3-6, 4-5 with odd {3,5}, real {1,4}."""
    return Supergraph(["1", "2", "3", "4", "5", "6"],
                      [(0, 1), (1, 2), (1, 3), (2, 5), (3, 4)],
                      psi=[2, 4], real=[0, 3])


@pytest.fixture(scope="session")
def tree6_plain():
    """The same tree in the plain regime (no real/psi0 annotations)."""
    return Supergraph(["1", "2", "3", "4", "5", "6"],
                      [(0, 1), (1, 2), (1, 3), (2, 5), (3, 4)], psi=[2, 4])


@pytest.fixture(scope="session")
def path6():
    """Six-vertex path 1-2-3-4-5-6 with odd {3,5}, real {1,4}."""
    return Supergraph(["1", "2", "3", "4", "5", "6"],
                      [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)],
                      psi=[2, 4], real=[0, 3])


@pytest.fixture(scope="session")
def p4():
    """Path on four vertices, all imaginary even."""
    return Supergraph(["1", "2", "3", "4"], [(0, 1), (1, 2), (2, 3)])


@pytest.fixture(scope="session")
def p4_odd():
    """Path on four vertices with odd {1,2,3}."""
    return Supergraph(["1", "2", "3", "4"], [(0, 1), (1, 2), (2, 3)],
                      psi=[0, 1, 2])


@pytest.fixture(scope="session")
def edge36():
    """Single edge 3-6 with 3 odd (the two-vertex core of the tree)."""
    return Supergraph(["3", "6"], [(0, 1)], psi=["3"])


TREE6_MATRIX = [
    [2, -1, 0, 0, 0, 0],
    [-1, -3, -4, -1, 0, 0],
    [0, -4, -4, 0, 0, -1],
    [0, -1, 0, 2, -1, 0],
    [0, 0, 0, -1, -2, 0],
    [0, 0, -1, 0, 0, -3],
]

PATH6_MATRIX = [
    [2, -1, 0, 0, 0, 0],
    [-1, -3, -1, 0, 0, 0],
    [0, -2, -4, -1, 0, 0],
    [0, 0, -1, 2, -1, 0],
    [0, 0, 0, -1, -2, -1],
    [0, 0, 0, 0, -1, -3],
]


@pytest.fixture(scope="session")
def tree6_matrix():
    return TREE6_MATRIX


@pytest.fixture(scope="session")
def path6_matrix():
    return PATH6_MATRIX
