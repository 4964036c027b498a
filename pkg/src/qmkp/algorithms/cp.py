"""Constructive procedure: global best-density insertion."""

from __future__ import annotations

import time

from ..core import Assignment, ProblemInstance, SolveResult
from ._packing import PackingState, make_result


def complete(instance: ProblemInstance, partial: Assignment | None = None) -> Assignment:
    """Extend ``partial`` by best-density insertions until no pair fits.

    Items already placed in ``partial`` are never moved or removed; the
    capacity they occupy is taken into account.
    """
    state = PackingState(instance, None if partial is None else partial.slots)
    state.fill()
    return state.assignment()


def solve_cp(instance: ProblemInstance) -> SolveResult:
    """Build a solution from empty by repeatedly inserting the best feasible pair.

    All (item, knapsack) pairs compete at every step; ties go to the lower
    item index and then the lower knapsack label.
    """
    started = time.perf_counter()
    return make_result(instance, complete(instance), "cp", {}, None, started)
