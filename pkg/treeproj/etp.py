"""
Exact tree projection by dynamic programming over the canonical tree.

The forward pass runs fine to coarse. Every node keeps F, the best subtree
energy for each cardinality up to its cap l(j), and G, the per-child
cardinalities achieving it. Children are merged one at a time into the
parent's row. The backward pass follows G from the root to recover the
support.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

import numpy as np

from .config import INT64_MAX
from .errors import BoundOverflow, ParameterError
from .log import get_logger
from .topology import TreeTopology, cardinality_cap, children_of, level_range
from .types import OpCounter, ProjectionResult, Signal, Support

logger = get_logger(__name__)

SignalLike = Union[Signal, Sequence[float], np.ndarray]


@dataclass(eq=False)
class DPTables:
    """
    F and G tables from one forward pass.

    ``F[i - 1]`` holds energies for cardinalities 0..cap of node i (0..k at
    the root). ``G[i - 1][l, r - 1]`` is the number of nodes child r of node i
    contributes to the optimal cardinality-l subtree at i.
    """

    topology: TreeTopology
    k: int
    F: List[np.ndarray]
    G: List[np.ndarray]
    ops: OpCounter = field(default_factory=OpCounter)

    def energy(self, i: int, l: int) -> float:
        return float(self.F[i - 1][l])

    def allocation(self, i: int, l: int) -> tuple:
        return tuple(int(v) for v in self.G[i - 1][l])

    def row_length(self, i: int) -> int:
        return int(self.F[i - 1].shape[0])


# --- Validation helpers ---

def _check_k(t: TreeTopology, k: int) -> None:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or not 1 <= k <= t.N:
        raise ParameterError(f"Cardinality k = {k} outside 1..{t.N}")


def as_signal(t: TreeTopology, y: SignalLike) -> Signal:
    """Wraps raw coefficients and checks the length against the topology."""
    if isinstance(y, Signal):
        return Signal.of(y.values, t.N)
    return Signal.of(y, t.N)


# --- Forward pass ---

def _new_row(y_sq: float, cap: int, d: int):
    F_row = np.zeros(cap + 1, dtype=np.float64)
    if cap >= 1:
        F_row[1] = y_sq
    G_row = np.zeros((cap + 1, d), dtype=np.int64)
    return F_row, G_row


def _merge_child(F_row, G_row, F_child, column, merged_before, cap, child_cap, ops):
    """
    Folds one child's table into the parent's row in place.

    ``merged_before`` children are already folded in, so the row is valid up
    to ``merged_before * child_cap + 1``. Split s is the child's share; s = 0
    keeps the pre-merge row entry and is allowed whenever that entry exists.
    The smallest maximizing s wins.
    """
    reach_before = merged_before * child_cap + 1
    top = min(cap, reach_before + child_cap)
    if top < 2:
        return
    # Temporaries: every cardinality reads the pre-merge row.
    F_tilde = np.empty(top - 1, dtype=np.float64)
    G_tilde = np.empty((top - 1, G_row.shape[1]), dtype=np.int64)
    for l in range(2, top + 1):
        s_lo = max(0, l - reach_before)
        s_hi = min(l - 1, child_cap)
        splits = np.arange(s_lo, s_hi + 1)
        candidates = F_child[s_lo:s_hi + 1] + F_row[l - splits]
        ops.add(candidates.shape[0])
        ops.compare(candidates.shape[0])
        best = int(np.argmax(candidates))
        s_hat = s_lo + best
        F_tilde[l - 2] = candidates[best]
        G_tilde[l - 2] = G_row[l - s_hat]
        G_tilde[l - 2, column] = s_hat
    F_row[2:top + 1] = F_tilde
    G_row[2:top + 1] = G_tilde


def forward_pass(t: TreeTopology, y: SignalLike, k: int, ops: Optional[OpCounter] = None) -> DPTables:
    """
    Fills F and G for every node, finest level first, then the root.

    Args:
        t: tree topology.
        y: length-N coefficients.
        k: target cardinality, 1 <= k <= N.
        ops: counter to accumulate into; a fresh one is used when omitted.

    Returns:
        DPTables whose root row gives the optimal energy for every k~ <= k.
    """
    _check_k(t, k)
    signal = as_signal(t, y)
    ops = OpCounter() if ops is None else ops
    d, J = t.d, t.J
    y_sq = signal.squared()
    caps = [k] + [cardinality_cap(t, k, j) for j in range(1, J + 1)] + [0]

    F: List[np.ndarray] = [None] * t.N
    G: List[np.ndarray] = [None] * t.N
    for j in range(J, 0, -1):
        cap, child_cap = caps[j], caps[j + 1]
        for i in level_range(t, j):
            F_row, G_row = _new_row(y_sq[i - 1], cap, d)
            if j < J:
                for r, child in enumerate(children_of(t, i), start=1):
                    _merge_child(F_row, G_row, F[child - 1], r - 1, r - 1, cap, child_cap, ops)
            F[i - 1], G[i - 1] = F_row, G_row
        logger.debug("level %d done: cap=%d, additions=%d, comparisons=%d", j, cap, ops.additions, ops.comparisons)

    # Root: d - 1 children, numbered 2..d, row spans 0..k.
    F_root, G_root = _new_row(y_sq[0], k, d)
    for r in range(2, d + 1):
        _merge_child(F_root, G_root, F[r - 1], r - 1, r - 2, k, caps[1], ops)
    F[0], G[0] = F_root, G_root
    logger.debug("forward pass done (%s, k=%d): %d additions, %d comparisons", t, k, ops.additions, ops.comparisons)
    return DPTables(t, k, F, G, ops.copy())


def energy_profile(tables: DPTables) -> List[float]:
    """Optimal energy F(1, k~) for every k~ = 0..k."""
    return [float(v) for v in tables.F[0]]


# --- Backward pass ---

def backtrack(t: TreeTopology, tables: DPTables, k_tilde: int, ops: Optional[OpCounter] = None) -> Support:
    """
    Recovers the optimal cardinality-k~ support from the tables.

    Every G_r > 0 test counts as one pass-2 comparison. The root is expanded
    over its children 2..d, every other selected node over all d children.
    """
    if isinstance(k_tilde, bool) or not isinstance(k_tilde, (int, np.integer)) or not 1 <= k_tilde <= tables.k:
        raise ParameterError(f"Backtrack cardinality {k_tilde} outside 1..{tables.k}")
    ops = OpCounter() if ops is None else ops
    start = ops.pass2_comparisons
    budget = {1: int(k_tilde)}
    selected = [1]
    frontier = [1]
    while frontier:
        next_frontier = []
        for i in frontier:
            row = tables.G[i - 1][budget[i]]
            for child in children_of(t, i):
                # Root children 2..d sit in columns 1..d-1, same as r - 1 elsewhere.
                r = child - t.d * (i - 1) if i != 1 else child
                ops.compare_pass2()
                share = int(row[r - 1])
                if share > 0:
                    budget[child] = share
                    selected.append(child)
                    next_frontier.append(child)
        frontier = next_frontier
    used = ops.pass2_comparisons - start
    if used > t.N:
        logger.warning("pass-2 comparisons %d exceed N = %d", used, t.N)
    return Support.of(selected)


# --- Projection ---

def etp_project(t: TreeTopology, y: SignalLike, k: int) -> ProjectionResult:
    """Exact Euclidean projection of y onto cardinality-k tree-sparse vectors."""
    _check_k(t, k)
    signal = as_signal(t, y)
    tables = forward_pass(t, signal, k)
    ops = tables.ops.copy()
    support = backtrack(t, tables, k, ops)
    return ProjectionResult.from_support(signal, support, ops)


def all_projections(t: TreeTopology, y: SignalLike, k: int) -> List[ProjectionResult]:
    """
    Projections for every k~ = 1..k from a single forward pass.

    Each result reports the shared forward-pass counts plus its own pass-2 count.
    """
    signal = as_signal(t, y)
    tables = forward_pass(t, signal, k)
    results = []
    for k_tilde in range(1, k + 1):
        ops = tables.ops.copy()
        support = backtrack(t, tables, k_tilde, ops)
        results.append(ProjectionResult.from_support(signal, support, ops))
    return results


def complexity_bound(d: int, N: int, k: int) -> int:
    """Worst-case additions plus comparisons, 3*d^2*N*k + N."""
    for name, value, low in (("d", d, 2), ("N", N, 1), ("k", k, 1)):
        if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < low:
            raise ParameterError(f"{name} must be an integer >= {low}, got {value!r}")
    bound = 3 * int(d) ** 2 * int(N) * int(k) + int(N)
    if bound > INT64_MAX:
        raise BoundOverflow(f"3*d^2*N*k + N overflows 64 bits for d={d}, N={N}, k={k}")
    return bound
