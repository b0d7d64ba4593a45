"""Value types shared by the projection, oracle and baseline modules."""

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .errors import ParameterError, SignalError


# --- Supports and decision vectors ---

@dataclass(frozen=True)
class Support:
    """A set of 1-based node ids, kept sorted ascending without duplicates."""

    nodes: Tuple[int, ...]

    def __post_init__(self):
        nodes = tuple(int(i) for i in self.nodes)
        if any(a >= b for a, b in zip(nodes, nodes[1:])):
            raise ParameterError(f"Support nodes must be strictly ascending: {list(nodes)}")
        if nodes and nodes[0] < 1:
            raise ParameterError(f"Node ids are 1-based, got {nodes[0]}")
        object.__setattr__(self, "nodes", nodes)

    @classmethod
    def of(cls, nodes: Iterable[int]) -> "Support":
        """Builds a support from any iterable of node ids; duplicates are rejected."""
        ordered = sorted(int(i) for i in nodes)
        if len(set(ordered)) != len(ordered):
            raise ParameterError(f"Duplicate node ids in support: {ordered}")
        return cls(tuple(ordered))

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def __contains__(self, node) -> bool:
        return node in self.nodes

    def as_list(self):
        return list(self.nodes)

    def indices(self) -> np.ndarray:
        """0-based positions, for indexing numpy arrays."""
        return np.asarray(self.nodes, dtype=np.int64) - 1


@dataclass(frozen=True)
class DecisionVector:
    """The 0/1 indicator tau of a support, entry i-1 for node i."""

    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(v) for v in self.entries)
        bad = [v for v in entries if v not in (0, 1)]
        if bad:
            raise ParameterError(f"Decision entries must be 0 or 1, got {bad[0]}")
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)


# --- Signals ---

@dataclass(frozen=True, eq=False)
class Signal:
    """A finite real coefficient vector y, stored as a read-only float64 array."""

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(values)):
            raise SignalError("Signal contains NaN or infinite coefficients")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def of(cls, values: Sequence[float], n: Optional[int] = None) -> "Signal":
        """Wraps ``values``; if ``n`` is given the length must match it exactly."""
        signal = cls(values)
        if n is not None and len(signal) != n:
            raise SignalError(f"Signal length {len(signal)} does not match N = {n}")
        return signal

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def squared(self) -> np.ndarray:
        return np.square(self.values)

    def energy_of(self, support: Support) -> float:
        """Sum of y_i^2 over the support, exactly rounded so equal supports agree bit for bit."""
        return math.fsum(float(self.values[i - 1]) ** 2 for i in support)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Signal):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash(self.values.tobytes())


# --- Results ---

@dataclass
class OpCounter:
    """Additions and comparisons performed by one projection run. Counters only grow."""

    additions: int = 0
    comparisons: int = 0
    pass2_comparisons: int = 0

    def add(self, n: int = 1) -> None:
        self.additions += n

    def compare(self, n: int = 1) -> None:
        self.comparisons += n

    def compare_pass2(self, n: int = 1) -> None:
        self.pass2_comparisons += n

    @property
    def pass1(self) -> int:
        return self.additions + self.comparisons

    @property
    def total(self) -> int:
        return self.additions + self.comparisons + self.pass2_comparisons

    def copy(self) -> "OpCounter":
        return OpCounter(self.additions, self.comparisons, self.pass2_comparisons)

    def as_dict(self):
        return {
            "additions": self.additions,
            "comparisons": self.comparisons,
            "pass2_comparisons": self.pass2_comparisons,
        }


@dataclass(frozen=True, eq=False)
class ProjectionResult:
    """The projection y_hat, its support, the support energy and the operation counts."""

    projection: np.ndarray
    support: Support
    energy: float
    ops: OpCounter = field(default_factory=OpCounter)

    @classmethod
    def from_support(cls, y: Signal, support: Support, ops: Optional[OpCounter] = None) -> "ProjectionResult":
        """Keeps y_i on the support and zeroes everything else."""
        projection = np.zeros(len(y), dtype=np.float64)
        idx = support.indices()
        projection[idx] = y.values[idx]
        projection.setflags(write=False)
        return cls(projection, support, y.energy_of(support), ops if ops is not None else OpCounter())

    @property
    def k(self) -> int:
        return len(self.support)
