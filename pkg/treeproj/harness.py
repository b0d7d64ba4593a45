"""
Verification harness: ETP against the oracle, operation counts against the
3*d^2*N*k + N bound, and op-count scaling in N and k.
"""

import math
import time
from dataclasses import asdict, dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd

from .compare import compare_results
from .config import DEFAULT_BENCH_SEED, SCALING_RATIO_MAX, SCALING_RATIO_MIN, Settings
from .errors import ParameterError
from .etp import complexity_bound, etp_project
from .log import get_logger
from .oracle import brute_force_project, perturb_for_uniqueness
from .topology import TreeTopology, build_topology
from .types import Signal

logger = get_logger(__name__)

# --- Configuration ---
K_RULES: Dict[str, Callable[[int], List[int]]] = {
    "two": lambda n: [2],
    "sqrt": lambda n: [math.isqrt(n - 1) + 1],
    "quarter": lambda n: [-(-n // 4)],
    "full": lambda n: [n],
}
K_RULES["all"] = lambda n: sorted({k for rule in ("two", "sqrt", "quarter", "full") for k in K_RULES[rule](n)})

SCALING_N = 1024
SCALING_N_DOUBLED = 2048
SCALING_K = 32
SCALING_K_DOUBLED = 64

CHECK_COLUMNS = ["k", "status", "etp_energy", "oracle_energy", "etp_support", "oracle_support", "detail"]


def signal_rng(seed: int, *stream: int) -> np.random.Generator:
    """Generator keyed on the base seed plus the cell coordinates, independent of run order."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), *[int(s) for s in stream]]))


def gaussian_signal(t: TreeTopology, rng: np.random.Generator) -> Signal:
    return Signal(rng.standard_normal(t.N))


# --- Oracle check ---

def check_projection(t: TreeTopology, y: Signal, k: int, settings: Settings = Settings()) -> dict:
    """
    Compares ETP with the oracle at one cardinality.

    Energies must agree on ``y``. Supports must also agree on the
    uniqueness-perturbed copy of ``y``, where the optimum is unique.
    """
    etp = etp_project(t, y, k)
    oracle = brute_force_project(t, y, k, max_enum=settings.max_enum)
    problems = compare_results(oracle, etp, settings.rel_tol, compare_support=False)

    perturbed = perturb_for_uniqueness(y, settings.perturb_eps)
    etp_unique = etp_project(t, perturbed, k)
    oracle_unique = brute_force_project(t, perturbed, k, max_enum=settings.max_enum)
    problems.extend(f"perturbed: {p}" for p in compare_results(oracle_unique, etp_unique, settings.rel_tol))

    return {
        "k": k,
        "status": "FAIL" if problems else "PASS",
        "etp_energy": etp.energy,
        "oracle_energy": oracle.energy,
        "etp_support": etp.support.as_list(),
        "oracle_support": oracle.support.as_list(),
        "detail": "; ".join(problems),
    }


def run_check(t: TreeTopology, y: Signal, k_values: Iterable[int], settings: Settings = Settings()) -> pd.DataFrame:
    """One row per k; ``status`` is PASS or FAIL."""
    rows = []
    for k in k_values:
        if not 1 <= k <= t.N:
            raise ParameterError(f"Cardinality k = {k} outside 1..{t.N}")
        rows.append(check_projection(t, y, k, settings))
        logger.debug("check k=%d: %s", k, rows[-1]["status"])
    return pd.DataFrame(rows, columns=CHECK_COLUMNS)


# --- Bench ---

@dataclass
class BenchRecord:
    """Operation counts and timing for one projection of a seeded Gaussian signal."""

    d: int
    J: int
    N: int
    k: int
    repetition: int
    additions: int
    comparisons: int
    pass2_comparisons: int
    bound: int
    wall_time: float
    seed: int

    @property
    def total(self) -> int:
        return self.additions + self.comparisons + self.pass2_comparisons

    @property
    def within_bound(self) -> bool:
        return self.total <= self.bound

    @property
    def pass1_within_bound(self) -> bool:
        return self.additions + self.comparisons <= self.bound - self.N


def bench_cell(d: int, J: int, k: int, repetition: int, seed: int = DEFAULT_BENCH_SEED) -> BenchRecord:
    t = build_topology(d, J)
    bound = complexity_bound(d, t.N, k)
    y = gaussian_signal(t, signal_rng(seed, d, J, k, repetition))
    start = time.perf_counter()
    result = etp_project(t, y, k)
    elapsed = time.perf_counter() - start
    return BenchRecord(d, J, t.N, k, repetition, result.ops.additions, result.ops.comparisons,
                       result.ops.pass2_comparisons, bound, elapsed, seed)


def k_values_for(n: int, k_rule: Optional[str] = None, k_list: Optional[Sequence[int]] = None) -> List[int]:
    """Cardinalities for one cell: explicit values capped at N, or those picked by a named rule."""
    if k_list:
        return sorted({min(int(k), n) for k in k_list})
    if k_rule not in K_RULES:
        raise ParameterError(f"Unknown k rule {k_rule!r}; choose from {', '.join(sorted(K_RULES))}")
    return K_RULES[k_rule](n)


def run_bench(d_list: Sequence[int], J_values: Sequence[int], k_rule: Optional[str] = "all",
              k_list: Optional[Sequence[int]] = None, seed: int = DEFAULT_BENCH_SEED,
              repetitions: int = 1) -> pd.DataFrame:
    """
    Benchmarks every (d, J, k) cell ``repetitions`` times.

    Rows are sorted by (d, J, k, repetition); ``within_bound`` and
    ``pass1_within_bound`` flag each record against the operation bound.
    """
    if repetitions < 1:
        raise ParameterError(f"Repetitions must be >= 1, got {repetitions}")
    records = []
    for d in d_list:
        for J in J_values:
            n = build_topology(d, J).N
            for k in k_values_for(n, k_rule, k_list):
                for rep in range(repetitions):
                    record = bench_cell(d, J, k, rep, seed)
                    records.append(record)
                    if not record.within_bound or not record.pass1_within_bound:
                        logger.warning("bound violated: d=%d J=%d k=%d total=%d bound=%d", d, J, k, record.total, record.bound)
    df = pd.DataFrame([asdict(r) for r in records])
    if df.empty:
        return df
    df["within_bound"] = [r.within_bound for r in records]
    df["pass1_within_bound"] = [r.pass1_within_bound for r in records]
    return df.sort_values(by=["d", "J", "k", "repetition"]).reset_index(drop=True)


def bench_summary(df: pd.DataFrame) -> pd.DataFrame:
    """Mean counts and timing per (d, J, k) cell, with the worst-case fraction of the bound used."""
    grouped = df.assign(total=df["additions"] + df["comparisons"] + df["pass2_comparisons"])
    grouped = grouped.assign(bound_fraction=grouped["total"] / grouped["bound"])
    return (grouped.groupby(["d", "J", "N", "k"], as_index=False)
            .agg(total=("total", "mean"), bound=("bound", "first"),
                 bound_fraction=("bound_fraction", "max"), wall_time=("wall_time", "mean")))


# --- Scaling ---

def op_count(d: int, J: int, k: int, seed: int = DEFAULT_BENCH_SEED) -> int:
    return bench_cell(d, J, k, 0, seed).total


def scaling_ratios(seed: int = DEFAULT_BENCH_SEED) -> pd.DataFrame:
    """
    Op-count ratios for a doubling of k at N = 1024 and a doubling of N at k = 32 (binary tree).

    Linear growth keeps both ratios near 2; a ratio above 3 points at superlinear growth.
    """
    J_base = SCALING_N.bit_length() - 1
    base = op_count(2, J_base, SCALING_K, seed)
    k_doubled = op_count(2, J_base, SCALING_K_DOUBLED, seed)
    n_doubled = op_count(2, J_base + 1, SCALING_K, seed)
    rows = [
        {"experiment": "k doubled", "N": SCALING_N, "k": SCALING_K_DOUBLED, "base_ops": base, "ops": k_doubled},
        {"experiment": "N doubled", "N": SCALING_N_DOUBLED, "k": SCALING_K, "base_ops": base, "ops": n_doubled},
    ]
    df = pd.DataFrame(rows)
    df["ratio"] = df["ops"] / df["base_ops"]
    df["status"] = np.where(df["ratio"].between(SCALING_RATIO_MIN, SCALING_RATIO_MAX), "PASS", "FAIL")
    return df
