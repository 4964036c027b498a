"""Knapsack-by-knapsack value-density greedy."""

import time

from ..core import ProblemInstance, SolveResult
from ._packing import PackingState, make_result


def solve_greedy(instance: ProblemInstance) -> SolveResult:
    """Fill the knapsacks one at a time, largest capacity first.

    Each knapsack repeatedly takes the unassigned item of highest marginal
    profit per unit weight until no remaining item fits, then the next
    knapsack is opened.  Capacity ties are opened in label order.
    """
    started = time.perf_counter()
    state = PackingState(instance)
    order = sorted(range(instance.k), key=lambda col: (-instance.capacities[col], col))
    for col in order:
        state.fill(column=col)
    return make_result(instance, state.assignment(), "greedy", {}, None, started)
