"""Polynomial-size DAG index over all maximal common subsequences (MCS).

Build once with :func:`build_mdag` + :func:`compact_mdag`, then count,
enumerate lexicographically, search by prefix, and rank/select over the
whole MCS set of two strings.
"""

from .builder import Mdag, build_mdag, compact_mdag, prune_mdag, stats
from .occurrence import INFINITY, OccurrenceIndex
from .oracle import OracleSet, brute_force_mcs, definitional_swings, is_maximal, is_subsequence
from .query import (
    EnumCursor,
    McsNotFoundError,
    PathCountAnnotation,
    annotate_counts,
    count,
    enumerate_mcs,
    expected_frames,
    rank,
    search_prefix,
    select,
)
from .swings import (
    SOURCE_QUADRUPLE,
    CandidateExtension,
    Quadruple,
    base_swing,
    extend_quadruple,
    junction_test,
    personal_swing,
    rectangle_test,
)

__all__ = [
    "INFINITY",
    "OccurrenceIndex",
    "Quadruple",
    "CandidateExtension",
    "SOURCE_QUADRUPLE",
    "base_swing",
    "personal_swing",
    "extend_quadruple",
    "rectangle_test",
    "junction_test",
    "OracleSet",
    "brute_force_mcs",
    "definitional_swings",
    "is_maximal",
    "is_subsequence",
    "Mdag",
    "build_mdag",
    "prune_mdag",
    "compact_mdag",
    "stats",
    "EnumCursor",
    "PathCountAnnotation",
    "McsNotFoundError",
    "annotate_counts",
    "count",
    "enumerate_mcs",
    "expected_frames",
    "rank",
    "search_prefix",
    "select",
]

__version__ = "0.1.0"
