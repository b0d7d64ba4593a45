"""End-to-end properties: exactness against the oracle, the operation bound, scaling, and the greedy comparison."""

import math

import numpy as np
import pytest

from treeproj.baselines import gta_project, monotone_signal
from treeproj.config import REL_TOL
from treeproj.etp import backtrack, complexity_bound, etp_project, forward_pass
from treeproj.harness import op_count, signal_rng
from treeproj.oracle import (brute_force_project, count_rooted_trees, enumerate_by_subset_filter,
                             enumerate_rooted_trees, perturb_for_uniqueness)
from treeproj.topology import build_topology, children_of, is_rooted_tree
from treeproj.types import Signal

ORACLE_TREES = [(2, 2), (2, 3), (3, 2), (3, 3)]
SIGNALS_PER_TREE = 100


def _signals(t, count, seed):
    return [Signal(signal_rng(seed, t.d, t.J, n).standard_normal(t.N)) for n in range(count)]


@pytest.mark.parametrize("d, J", ORACLE_TREES)
def test_oracle_equivalence(d, J):
    t = build_topology(d, J)
    for y in _signals(t, SIGNALS_PER_TREE, seed=1):
        unique = perturb_for_uniqueness(y)
        for k in range(1, min(t.N, 12) + 1):
            exact = etp_project(t, y, k)
            oracle = brute_force_project(t, y, k)
            assert math.isclose(exact.energy, oracle.energy, rel_tol=REL_TOL)
            assert etp_project(t, unique, k).support == brute_force_project(t, unique, k).support


@pytest.mark.parametrize("d, J, max_k", [(2, 4, 8), (2, 5, 6), (2, 6, 5), (4, 3, 5)])
def test_oracle_equivalence_larger_trees(d, J, max_k):
    t = build_topology(d, J)
    rng = np.random.default_rng([7, d, J])
    for n in range(10):
        gaussian = Signal(rng.standard_normal(t.N))
        # Small integers produce many exact ties.
        integers = Signal(rng.integers(-3, 4, size=t.N).astype(float))
        for k in range(1, max_k + 1):
            for y in (gaussian, integers):
                exact = etp_project(t, y, k)
                assert is_rooted_tree(t, exact.support)
                assert math.isclose(exact.energy, brute_force_project(t, y, k).energy, rel_tol=REL_TOL)
            unique = perturb_for_uniqueness(gaussian)
            assert etp_project(t, unique, k).support == brute_force_project(t, unique, k).support


@pytest.mark.parametrize("d", [2, 3, 4])
def test_operation_bound(d):
    J = 2
    while d ** J <= 4096:
        t = build_topology(d, J)
        y = Signal(signal_rng(2, d, J).standard_normal(t.N))
        for k in sorted({2, math.isqrt(t.N - 1) + 1, -(-t.N // 4), t.N}):
            ops = etp_project(t, y, k).ops
            bound = complexity_bound(d, t.N, k)
            assert ops.total <= bound
            assert ops.pass1 <= 3 * d * d * t.N * k
        J += 1


def test_linear_scaling_in_k_and_n():
    base = op_count(2, 10, 32)
    assert 1 <= op_count(2, 10, 64) / base <= 3
    assert 1 <= op_count(2, 11, 32) / base <= 3


def test_greedy_gap_witness(binary8, gap_signal):
    assert gta_project(binary8, gap_signal, 4).energy == 21.0
    assert etp_project(binary8, gap_signal, 4).energy == 30.0


@pytest.mark.parametrize("d, J", ORACLE_TREES + [(2, 5), (4, 3)])
def test_exact_dominates_greedy(d, J):
    t = build_topology(d, J)
    for y in _signals(t, 20, seed=3):
        for k in (1, 2, t.N // 3 or 1, t.N):
            assert etp_project(t, y, k).energy >= gta_project(t, y, k).energy * (1 - 1e-12)


@pytest.mark.parametrize("d, J", [(2, 4), (3, 3), (4, 2)])
def test_greedy_exact_on_monotone_signals(d, J):
    t = build_topology(d, J)
    rng = np.random.default_rng([5, d, J])
    for _ in range(SIGNALS_PER_TREE):
        y = monotone_signal(t, rng)
        k = int(rng.integers(1, t.N + 1))
        assert gta_project(t, y, k).energy == etp_project(t, y, k).energy


@pytest.mark.parametrize("d, J", [(2, 4), (3, 3)])
def test_structural_invariants(d, J):
    t = build_topology(d, J)
    for n, y in enumerate(_signals(t, SIGNALS_PER_TREE, seed=4)):
        k = 1 + n % t.N
        result = etp_project(t, y, k)
        assert len(result.support) == k and is_rooted_tree(t, result.support)
        for i in range(1, t.N + 1):
            assert result.projection[i - 1] == (y.values[i - 1] if i in result.support else 0.0)

        again = etp_project(t, result.projection, k)
        assert again.support == result.support
        np.testing.assert_array_equal(again.projection, result.projection)

        # Powers of two scale every energy exactly.
        for c in (-2.0, 0.5, 4.0, -0.25):
            assert etp_project(t, c * y.values, k).support == result.support
        for c in (3.0, -0.7, 1e-3, 17.3):
            scaled = etp_project(t, c * y.values, k)
            assert scaled.support == result.support
            assert math.isclose(scaled.energy, c * c * result.energy, rel_tol=REL_TOL)

        tables = forward_pass(t, y, k)
        budget = {1: k}
        for i in result.support:
            alloc = tables.allocation(i, budget[i])
            assert 1 + sum(alloc) == budget[i]
            for child in children_of(t, i):
                r = child if i == 1 else child - t.d * (i - 1)
                if alloc[r - 1]:
                    budget[child] = alloc[r - 1]


def test_all_k_byproduct():
    t = build_topology(2, 3)
    y = Signal(signal_rng(6).standard_normal(t.N))
    tables = forward_pass(t, y, min(12, t.N))
    for k_tilde in range(1, t.N + 1):
        support = backtrack(t, tables, k_tilde)
        assert math.isclose(y.energy_of(support), brute_force_project(t, y, k_tilde).energy, rel_tol=REL_TOL)


def test_enumeration_completeness():
    for d in (2, 3, 4):
        J = 2
        while d ** J <= 16:
            t = build_topology(d, J)
            for k in range(1, t.N + 1):
                assert len(enumerate_rooted_trees(t, k)) == len(enumerate_by_subset_filter(t, k))
            J += 1
    assert count_rooted_trees(build_topology(2, 2), 3) == 2
    assert count_rooted_trees(build_topology(2, 3), 4) == 5
