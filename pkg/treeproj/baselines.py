"""Greedy tree approximation (GTA), the baseline ETP is compared against."""

import heapq

import numpy as np

from .errors import ParameterError
from .etp import SignalLike, as_signal
from .topology import TreeTopology, children_of, parent_of
from .types import OpCounter, ProjectionResult, Signal, Support


def gta_project(t: TreeTopology, y: SignalLike, k: int) -> ProjectionResult:
    """
    Grows the support from the root, each step adding the frontier node with the largest y_i^2.

    Ties go to the smallest node id. The result is always a rooted tree of
    cardinality k; it is optimal when magnitudes never increase along a branch.
    """
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or not 1 <= k <= t.N:
        raise ParameterError(f"Cardinality k = {k} outside 1..{t.N}")
    signal = as_signal(t, y)
    y_sq = signal.squared()
    ops = OpCounter()

    selected = [1]
    frontier = [(-y_sq[c - 1], c) for c in children_of(t, 1)]
    heapq.heapify(frontier)
    while len(selected) < k:
        _, node = heapq.heappop(frontier)
        selected.append(node)
        for child in children_of(t, node):
            heapq.heappush(frontier, (-y_sq[child - 1], child))
    return ProjectionResult.from_support(signal, Support.of(selected), ops)


# --- Monotone signals ---

def is_branch_monotone(t: TreeTopology, y: SignalLike) -> bool:
    """True iff y_i^2 >= y_c^2 for every node i and each of its children c."""
    y_sq = as_signal(t, y).squared()
    return all(y_sq[parent_of(t, i) - 1] >= y_sq[i - 1] for i in range(2, t.N + 1))


def monotone_signal(t: TreeTopology, rng: np.random.Generator) -> Signal:
    """
    Gaussian magnitudes sorted descending and assigned in node order, with random signs.

    Parents always carry smaller ids than their children, so magnitudes never
    increase along a branch.
    """
    magnitudes = np.sort(np.abs(rng.standard_normal(t.N)))[::-1]
    signs = rng.choice(np.array([-1.0, 1.0]), size=t.N)
    return Signal(signs * magnitudes)
