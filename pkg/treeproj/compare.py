"""Structured comparison of supports and result documents."""

import math
from typing import Any, Dict, List

from deepdiff import DeepDiff

from .config import REL_TOL
from .types import ProjectionResult


def diff_summary(diff: DeepDiff) -> List[str]:
    """Readable lines for a DeepDiff: added/removed keys and items, changed values and types."""
    summary = []
    if "dictionary_item_added" in diff:
        summary.append(f"Keys added: {', '.join(diff['dictionary_item_added'])}")
    if "dictionary_item_removed" in diff:
        summary.append(f"Keys removed: {', '.join(diff['dictionary_item_removed'])}")
    if "iterable_item_added" in diff:
        for path, value in diff["iterable_item_added"].items():
            summary.append(f"- {path}: added {value!r}")
    if "iterable_item_removed" in diff:
        for path, value in diff["iterable_item_removed"].items():
            summary.append(f"- {path}: removed {value!r}")
    if "values_changed" in diff:
        summary.append("Values changed:")
        for path, change in diff["values_changed"].items():
            summary.append(f"- {path}: {change['old_value']!r} -> {change['new_value']!r}")
    if "type_changes" in diff:
        summary.append("Type changes:")
        for path, change in diff["type_changes"].items():
            summary.append(f"- {path}: {change['old_type'].__name__} -> {change['new_type'].__name__}")
    return summary


def compare_documents(expected: Dict[str, Any], actual: Dict[str, Any]) -> List[str]:
    """Empty list when the documents are identical, otherwise a summary of the differences."""
    diff = DeepDiff(expected, actual, ignore_order=False)
    return diff_summary(diff) if diff else []


def energies_agree(a: float, b: float, rel_tol: float = REL_TOL) -> bool:
    return math.isclose(a, b, rel_tol=rel_tol, abs_tol=0.0) or a == b


def compare_results(reference: ProjectionResult, candidate: ProjectionResult, rel_tol: float = REL_TOL,
                    compare_support: bool = True) -> List[str]:
    """
    Differences between two projections of the same signal.

    Energies are compared with a relative tolerance; supports with DeepDiff.
    """
    problems = []
    if not energies_agree(reference.energy, candidate.energy, rel_tol):
        problems.append(f"energy {reference.energy!r} != {candidate.energy!r}")
    if compare_support:
        diff = DeepDiff(reference.support.as_list(), candidate.support.as_list())
        if diff:
            problems.append(f"support {reference.support.as_list()} != {candidate.support.as_list()}")
            problems.extend(diff_summary(diff))
    return problems
