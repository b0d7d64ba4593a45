import numpy as np
import pytest

from treeproj.topology import build_topology

# --- Worked instances ---
# Binary tree with J = 3 where greedy commits to node 3 and misses node 7.
GAP_SIGNAL = [0.0, 1.0, 4.0, 2.0, 0.0, 0.0, 5.0, 3.0]
SMALL_SIGNAL = [1.0, 2.0, 3.0, 4.0]


@pytest.fixture
def binary4():
    """d=2, J=2: nodes 1..4, root -> 2 -> {3, 4}."""
    return build_topology(2, 2)


@pytest.fixture
def binary8():
    """d=2, J=3: nodes 1..8."""
    return build_topology(2, 3)


@pytest.fixture
def gap_signal():
    return list(GAP_SIGNAL)


@pytest.fixture
def small_signal():
    return list(SMALL_SIGNAL)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
