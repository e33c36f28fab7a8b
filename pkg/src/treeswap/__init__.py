"""Token swapping on trees: exact solvers for the tractable families, a
brute-force oracle, the three 2-approximation algorithms, and generators for
the hard-instance constructions."""

from .core import (
    ApplyResult,
    Colouring,
    CycleDecomposition,
    Instance,
    Tree,
    WeightTable,
    apply_sequence,
    cycle_decomposition,
    distance_metrics,
    validate_tree,
    weighted_instance,
)
from .oracle import DistanceTable, SearchResult, all_distances, diameter, optimal

__all__ = [
    "ApplyResult",
    "Colouring",
    "CycleDecomposition",
    "DistanceTable",
    "Instance",
    "SearchResult",
    "Tree",
    "WeightTable",
    "all_distances",
    "apply_sequence",
    "cycle_decomposition",
    "diameter",
    "distance_metrics",
    "optimal",
    "validate_tree",
    "weighted_instance",
]

__version__ = "0.1.0"
