"""Length-constrained cuts, parallel-greedy graphs and expander decompositions at desk scale."""

from lced.errors import (
    ArgumentError,
    BudgetExceeded,
    ConstructionError,
    FormatError,
    MatchingStructureError,
)
from lced.graph import INF, LengthCapGraph, NodeWeighting, ball, degree_weighting, distance
from lced.demand import Demand
from lced.cuts import MovingCut, apply_cut, demand_size, sparsity, verify_cut_sequence
from lced.greedy import MatchingSequence, generate_parallel_greedy, verify_parallel_greedy

__all__ = [
    "ArgumentError",
    "BudgetExceeded",
    "ConstructionError",
    "Demand",
    "FormatError",
    "INF",
    "LengthCapGraph",
    "MatchingSequence",
    "MatchingStructureError",
    "MovingCut",
    "NodeWeighting",
    "apply_cut",
    "ball",
    "degree_weighting",
    "demand_size",
    "distance",
    "generate_parallel_greedy",
    "sparsity",
    "verify_cut_sequence",
    "verify_parallel_greedy",
]
