"""
Brute-force ground truth for small trees.

Every rooted tree of cardinality k is enumerated, the energies are compared
exhaustively, and decision vectors are checked against the integer-program
constraints (tau in {0,1}, tau_child <= tau_parent, sum tau = k, tau_1 = 1).
"""

import itertools
from typing import Iterator, List, Sequence, Tuple, Union

import numpy as np

from .config import DEFAULT_MAX_ENUM, ENUM_CHUNK_ROWS, PERTURB_EPS, SUBSET_FILTER_MAX_N
from .errors import EnumerationTooLarge, ParameterError
from .etp import SignalLike, as_signal
from .log import get_logger
from .topology import TreeTopology, children_of, is_rooted_tree, parent_of
from .types import DecisionVector, OpCounter, ProjectionResult, Signal, Support

logger = get_logger(__name__)


def _check_k(t: TreeTopology, k: int) -> None:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or not 1 <= k <= t.N:
        raise ParameterError(f"Cardinality k = {k} outside 1..{t.N}")


# --- Counting ---

def _poly_mul(a: List[int], b: List[int], k: int) -> List[int]:
    out = [0] * (k + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b[:k + 1 - i]):
            out[i + j] += x * y
    return out


def count_rooted_trees(t: TreeTopology, k: int) -> int:
    """
    Exact |T_k|, without enumerating.

    Nodes on one level root identical subtrees, so one size polynomial per
    level suffices: P_J = x, P_j = x * (1 + P_{j+1})**d, root = x * (1 + P_1)**(d-1).
    """
    _check_k(t, k)
    poly = [0, 1] + [0] * (k - 1)
    for _ in range(t.J - 1, 0, -1):
        factor = [1] + poly[1:]
        acc = [1] + [0] * k
        for _ in range(t.d):
            acc = _poly_mul(acc, factor, k)
        poly = [0] + acc[:k]
    factor = [1] + poly[1:]
    acc = [1] + [0] * k
    for _ in range(t.d - 1):
        acc = _poly_mul(acc, factor, k)
    return ([0] + acc[:k])[k]


# --- Enumeration ---

def _iter_rooted_trees(t: TreeTopology, k: int) -> Iterator[Tuple[int, ...]]:
    """
    Yields every cardinality-k rooted tree as ascending node ids, in lexicographic order.

    The smallest frontier node is either taken (its children join the frontier)
    or dropped for good. Taken nodes arrive in increasing order, and the take
    branch always precedes the drop branch.
    """

    def expand(chosen, frontier, remaining):
        if remaining == 0:
            yield tuple(chosen)
            return
        if not frontier:
            return
        v, rest = frontier[0], frontier[1:]
        chosen.append(v)
        yield from expand(chosen, tuple(sorted(rest + tuple(children_of(t, v)))), remaining - 1)
        chosen.pop()
        yield from expand(chosen, rest, remaining)

    yield from expand([1], tuple(children_of(t, 1)), k - 1)


def _support_chunks(t: TreeTopology, k: int, chunk_rows: int) -> Iterator[np.ndarray]:
    """Rooted trees in batches of at most ``chunk_rows`` rows, one support per row."""
    trees = _iter_rooted_trees(t, k)
    while True:
        rows = list(itertools.islice(trees, chunk_rows))
        if not rows:
            return
        yield np.array(rows, dtype=np.int64).reshape(len(rows), k)


def _guard(t: TreeTopology, k: int, max_enum: int) -> int:
    _check_k(t, k)
    count = count_rooted_trees(t, k)
    if count > max_enum:
        raise EnumerationTooLarge(count, max_enum)
    logger.debug("enumerating %d rooted trees (%s, k=%d)", count, t, k)
    return count


def enumerate_rooted_trees(t: TreeTopology, k: int, max_enum: int = DEFAULT_MAX_ENUM) -> List[Support]:
    """
    All rooted trees of cardinality k, each once, in lexicographic order.

    Raises:
        EnumerationTooLarge: if |T_k| exceeds ``max_enum``; checked before any enumeration.
    """
    _guard(t, k, max_enum)
    return [Support(nodes) for nodes in _iter_rooted_trees(t, k)]


def enumerate_by_subset_filter(t: TreeTopology, k: int) -> List[Support]:
    """Independent cross-check: filter all C(N, k) subsets. Only for N <= 16."""
    _check_k(t, k)
    if t.N > SUBSET_FILTER_MAX_N:
        raise ParameterError(f"Subset filter limited to N <= {SUBSET_FILTER_MAX_N}, got N = {t.N}")
    return [Support(combo) for combo in itertools.combinations(range(1, t.N + 1), k) if is_rooted_tree(t, combo)]


# --- Exhaustive projection ---

def brute_force_project(t: TreeTopology, y: SignalLike, k: int, max_enum: int = DEFAULT_MAX_ENUM,
                        chunk_rows: int = ENUM_CHUNK_ROWS) -> ProjectionResult:
    """
    Maximum-energy support by exhaustion; ties go to the lexicographically smallest node list.

    Supports are scored ``chunk_rows`` at a time, so memory stays flat in |T_k|.
    Op counters are left at zero.
    """
    if chunk_rows < 1:
        raise ParameterError(f"chunk_rows must be >= 1, got {chunk_rows}")
    signal = as_signal(t, y)
    _guard(t, k, max_enum)
    y_sq = signal.squared()
    best_energy, best_row = None, None
    for chunk in _support_chunks(t, k, chunk_rows):
        energies = y_sq[chunk - 1].sum(axis=1)
        idx = int(np.argmax(energies))
        # Strictly greater only: an earlier chunk holds the lexicographically smaller tie.
        if best_energy is None or energies[idx] > best_energy:
            best_energy, best_row = energies[idx], chunk[idx]
    support = Support(tuple(int(v) for v in best_row))
    return ProjectionResult.from_support(signal, support, OpCounter())


# --- Integer program view ---

def is_valid_decision(t: TreeTopology, tau: Union[DecisionVector, Sequence[int]], k: int) -> bool:
    """True iff tau is 0/1, tree-nonincreasing (tau_i <= tau_parent), sums to k and has tau_1 = 1."""
    entries = list(tau)
    if len(entries) != t.N:
        raise ParameterError(f"Decision vector length {len(entries)} does not match N = {t.N}")
    if any(v not in (0, 1) for v in entries):
        return False
    if entries[0] != 1 or sum(entries) != k:
        return False
    return all(entries[i - 1] <= entries[parent_of(t, i) - 1] for i in range(2, t.N + 1))


def ip_objective(y: Signal, tau: Union[DecisionVector, Sequence[int]]) -> float:
    """Objective sum y_i^2 tau_i of the integer program."""
    weights = np.asarray(list(tau), dtype=np.float64)
    if weights.shape[0] != len(y):
        raise ParameterError(f"Decision vector length {weights.shape[0]} does not match signal length {len(y)}")
    return float(np.dot(y.squared(), weights))


def perturb_for_uniqueness(y: Signal, eps: float = PERTURB_EPS) -> Signal:
    """
    Adds i * eps to the magnitude of coefficient i, keeping its sign (zeros become +i * eps).

    Distinct magnitudes make the optimal support unique for generic inputs.
    """
    values = y.values
    steps = eps * np.arange(1, len(y) + 1, dtype=np.float64)
    signs = np.where(values < 0, -1.0, 1.0)
    return Signal(signs * (np.abs(values) + steps))
