import logging

import pytest

from treeproj.baselines import gta_project
from treeproj.compare import compare_documents, compare_results, energies_agree
from treeproj.config import Settings
from treeproj.errors import ParameterError
from treeproj.etp import etp_project
from treeproj.io import result_document
from treeproj.harness import (bench_cell, bench_summary, k_values_for, run_bench, run_check, scaling_ratios,
                              signal_rng, gaussian_signal)
from treeproj.log import configure_logging, get_logger
from treeproj.topology import build_topology
from treeproj.types import Signal


def test_k_rules():
    assert k_values_for(1024, "two") == [2]
    assert k_values_for(1024, "sqrt") == [32]
    assert k_values_for(1000, "sqrt") == [32]
    assert k_values_for(9, "quarter") == [3]
    assert k_values_for(16, "all") == [2, 4, 16]
    assert k_values_for(8, None, [3, 20, 3]) == [3, 8]
    with pytest.raises(ParameterError):
        k_values_for(8, "cubic")


def test_signal_rng_is_keyed_on_cell():
    t = build_topology(2, 3)
    a = gaussian_signal(t, signal_rng(5, 2, 3, 4, 0))
    b = gaussian_signal(t, signal_rng(5, 2, 3, 4, 0))
    c = gaussian_signal(t, signal_rng(5, 2, 3, 4, 1))
    assert a == b
    assert a != c


def test_run_check_all_pass():
    t = build_topology(3, 2)
    report = run_check(t, gaussian_signal(t, signal_rng(3)), range(1, t.N + 1))
    assert list(report["k"]) == list(range(1, 10))
    assert set(report["status"]) == {"PASS"}


def test_run_check_rejects_k():
    t = build_topology(3, 2)
    with pytest.raises(ParameterError):
        run_check(t, gaussian_signal(t, signal_rng(3)), [0])


def test_bench_cell_record():
    record = bench_cell(2, 10, 32, 0, seed=11)
    assert (record.d, record.J, record.N, record.k, record.seed) == (2, 10, 1024, 32, 11)
    assert record.bound == 394240
    assert record.within_bound and record.pass1_within_bound
    assert record.wall_time >= 0


def test_run_bench_sorted_and_bounded():
    df = run_bench([3, 2], [3, 2], "all", seed=1, repetitions=2)
    keys = list(zip(df["d"], df["J"], df["k"], df["repetition"]))
    assert keys == sorted(keys)
    assert df["within_bound"].all() and df["pass1_within_bound"].all()
    summary = bench_summary(df)
    assert (summary["bound_fraction"] <= 1).all()


def test_run_bench_rejects_reps():
    with pytest.raises(ParameterError):
        run_bench([2], [3], "two", repetitions=0)


def test_scaling_ratios_within_band():
    df = scaling_ratios()
    assert list(df["experiment"]) == ["k doubled", "N doubled"]
    assert ((df["ratio"] >= 1) & (df["ratio"] <= 3)).all()
    assert set(df["status"]) == {"PASS"}


def test_compare_documents_reports_changes():
    summary = compare_documents({"support": [1, 2], "energy": 1.0}, {"support": [1, 3], "energy": 1.0})
    assert summary[0] == "Values changed:"
    assert "root['support'][1]" in summary[1]


def test_compare_documents_reports_keys_and_types(binary8, gap_signal):
    exact = result_document(binary8, etp_project(binary8, gap_signal, 4))
    greedy = result_document(binary8, gta_project(binary8, gap_signal, 4), method="gta")
    summary = compare_documents(exact, greedy)
    assert summary[0] == "Keys added: root['method']"
    assert "Values changed:" in summary

    legacy = {**exact, "k": "4"}
    del legacy["ops"]
    summary = compare_documents(exact, legacy)
    assert summary[0] == "Keys removed: root['ops']"
    assert summary[-2:] == ["Type changes:", "- root['k']: int -> str"]


def test_compare_results(binary8, gap_signal):
    exact = etp_project(binary8, gap_signal, 4)
    other = etp_project(binary8, gap_signal, 3)
    assert compare_results(exact, exact) == []
    problems = compare_results(exact, other)
    assert problems[0].startswith("energy")
    assert any(p.startswith("support") for p in problems)


def test_energies_agree():
    assert energies_agree(1.0, 1.0 + 1e-12)
    assert not energies_agree(1.0, 1.001)
    assert energies_agree(0.0, 0.0)


def test_settings_from_env():
    settings = Settings.from_env({"TREEPROJ_MAX_ENUM": "50", "TREEPROJ_LOG_LEVEL": "debug"})
    assert settings.max_enum == 50
    assert settings.log_level == "DEBUG"
    assert settings.with_overrides(max_enum=7, rel_tol=None).max_enum == 7
    with pytest.raises(ParameterError):
        Settings.from_env({"TREEPROJ_MAX_ENUM": "many"})
    with pytest.raises(ParameterError):
        Settings.from_env({"TREEPROJ_LOG_LEVEL": "chatty"})


def test_configure_logging_replaces_handler():
    logger = configure_logging("DEBUG")
    configure_logging("WARNING")
    assert len(logger.handlers) == 1
    assert logger.level == logging.WARNING
    assert get_logger("etp").name == "treeproj.etp"
    assert get_logger("treeproj.oracle").name == "treeproj.oracle"


def test_signal_equality():
    assert Signal([1.0, 2.0]) == Signal([1.0, 2.0])
    assert Signal([1.0, 2.0]) != Signal([1.0, 3.0])
