"""
Threshold optimization package.

Armijo gradient-descent solvers for the discrimination-enhancing threshold
and the MQE baseline threshold search.
"""

from .mqe import mqe_search, solve_mqe_threshold
from .objectives import (
    MeanObjective,
    binary_gradient,
    binary_objective,
    ternary_gradient,
    ternary_objective,
)
from .solver import SolverConfig, SolverResult, default_starts, solve_threshold

__all__ = [
    "mqe_search",
    "solve_mqe_threshold",
    "MeanObjective",
    "binary_gradient",
    "binary_objective",
    "ternary_gradient",
    "ternary_objective",
    "SolverConfig",
    "SolverResult",
    "default_starts",
    "solve_threshold",
]
