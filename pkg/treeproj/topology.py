"""
Canonical d-ary wavelet tree numbering.

Node 1 is the root at level 0 with children 2..d. Every other node i up to
N/d has children d(i-1)+1..di, and the nodes above N/d form the finest level
J. Node ids are 1-based everywhere in this package.
"""

import numbers
from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

from .config import INT64_MAX
from .errors import ParameterError
from .types import DecisionVector, Support


@dataclass(frozen=True)
class TreeTopology:
    """Dimensions of the canonical tree: order d, levels J below the root, N = d**J nodes."""

    d: int
    J: int
    N: int

    def __post_init__(self):
        if self.N != self.d ** self.J:
            raise ParameterError(f"N must equal d**J ({self.d}**{self.J}), got {self.N}")

    @property
    def leaf_start(self) -> int:
        """First node id of the finest level (N/d + 1)."""
        return self.N // self.d + 1

    def __str__(self) -> str:
        return f"d={self.d}, J={self.J}, N={self.N}"


# --- Construction ---

def build_topology(d: int, J: int) -> TreeTopology:
    """Validates d >= 2 and J >= 2 and returns the tree with N = d**J."""
    if isinstance(d, bool) or not isinstance(d, int) or d < 2:
        raise ParameterError(f"Tree order d must be an integer >= 2, got {d!r}")
    if isinstance(J, bool) or not isinstance(J, int) or J < 2:
        raise ParameterError(f"Level count J must be an integer >= 2, got {J!r}")
    N = d ** J
    if N > INT64_MAX:
        raise ParameterError(f"N = {d}**{J} does not fit a 64-bit integer")
    return TreeTopology(d, J, N)


def topology_for_length(d: int, n: int) -> TreeTopology:
    """
    Recovers the tree whose node count is ``n``.

    Raises:
        ParameterError: if ``n`` is not d**J for some J >= 2.
    """
    if isinstance(d, bool) or not isinstance(d, int) or d < 2:
        raise ParameterError(f"Tree order d must be an integer >= 2, got {d!r}")
    J, power = 0, 1
    while power < n:
        power *= d
        J += 1
    if power != n:
        raise ParameterError(f"length {n} is not a power of {d}")
    if J < 2:
        raise ParameterError(f"length {n} gives J = {J}; at least 2 levels are required")
    return build_topology(d, J)


# --- Index arithmetic ---

def _check_node(t: TreeTopology, i: int) -> None:
    if not 1 <= i <= t.N:
        raise ParameterError(f"Node id {i} outside 1..{t.N}")


def level_range(t: TreeTopology, j: int) -> range:
    """Node ids at level j: {1} for j = 0, d**(j-1)+1 .. d**j otherwise."""
    if not 0 <= j <= t.J:
        raise ParameterError(f"Level {j} outside 0..{t.J}")
    if j == 0:
        return range(1, 2)
    return range(t.d ** (j - 1) + 1, t.d ** j + 1)


def level_size(t: TreeTopology, j: int) -> int:
    return len(level_range(t, j))


def level_of(t: TreeTopology, i: int) -> int:
    """Level of node i; the root is level 0."""
    _check_node(t, i)
    j, upper = 0, 1
    while i > upper:
        upper *= t.d
        j += 1
    return j


def children_of(t: TreeTopology, i: int) -> List[int]:
    """Children of node i in ascending order; empty at the finest level."""
    _check_node(t, i)
    if i == 1:
        return list(range(2, t.d + 1))
    if i > t.N // t.d:
        return []
    return list(range(t.d * (i - 1) + 1, t.d * i + 1))


def parent_of(t: TreeTopology, i: int) -> Optional[int]:
    """Parent of node i, or None for the root."""
    _check_node(t, i)
    if i == 1:
        return None
    return (i - 1) // t.d + 1


def subtree_size(t: TreeTopology, j: int) -> int:
    """Node count of a full subtree rooted at level j >= 1: (d**(J+1-j) - 1) / (d - 1)."""
    if not 1 <= j <= t.J:
        raise ParameterError(f"Level {j} outside 1..{t.J}")
    return (t.d ** (t.J + 1 - j) - 1) // (t.d - 1)


def cardinality_cap(t: TreeTopology, k: int, j: int) -> int:
    """
    Largest subtree cardinality l(j) a level-j node can contribute to a cardinality-k rooted tree.

    Clamped below at 0 so levels deeper than k - 1 get empty tables. Any
    k >= 1 is accepted; beyond N the subtree size is the binding term.
    """
    if isinstance(k, bool) or not isinstance(k, numbers.Integral) or k < 1:
        raise ParameterError(f"Cardinality k must be an integer >= 1, got {k!r}")
    return max(0, min(subtree_size(t, j), k - j))


# --- Rooted trees ---

def is_rooted_tree(t: TreeTopology, support: Union[Support, Sequence[int]]) -> bool:
    """True iff the support contains the root and the parent of every other member."""
    nodes = set(support)
    for i in nodes:
        _check_node(t, i)
    if 1 not in nodes:
        return False
    return all(parent_of(t, i) in nodes for i in nodes if i != 1)


def indicator_of(t: TreeTopology, support: Support) -> DecisionVector:
    """The 0/1 decision vector tau with tau_i = 1 exactly on the support."""
    entries = [0] * t.N
    for i in support:
        _check_node(t, i)
        entries[i - 1] = 1
    return DecisionVector(tuple(entries))


def support_from_indicator(t: TreeTopology, tau: DecisionVector) -> Support:
    if len(tau) != t.N:
        raise ParameterError(f"Decision vector length {len(tau)} does not match N = {t.N}")
    return Support(tuple(i + 1 for i, v in enumerate(tau) if v))
