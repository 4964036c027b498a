"""Solvers for the quadratic multiple knapsack problem and their registry."""

from .baseline import solve_random
from .cp import complete, solve_cp
from .exact import solve_exact
from .fcs import solve_fcs
from .greedy import solve_greedy
from .registry import (
    Param,
    SolverSpec,
    register,
    registry_get,
    registry_list,
    unregister,
)

__all__ = [
    "Param",
    "SolverSpec",
    "complete",
    "register",
    "registry_get",
    "registry_list",
    "solve_cp",
    "solve_exact",
    "solve_fcs",
    "solve_greedy",
    "solve_random",
    "unregister",
]
