"""Exact Euclidean projection onto tree-sparse vectors over canonical d-ary wavelet trees."""

__version__ = "0.1.0"

from .baselines import gta_project
from .errors import (BoundOverflow, EnumerationTooLarge, InputFormatError, ParameterError, SignalError,
                     TreeProjError)
from .etp import all_projections, backtrack, complexity_bound, etp_project, forward_pass
from .oracle import brute_force_project, enumerate_rooted_trees, is_valid_decision
from .topology import (TreeTopology, build_topology, cardinality_cap, children_of, is_rooted_tree, level_of,
                       parent_of)
from .types import DecisionVector, OpCounter, ProjectionResult, Signal, Support
