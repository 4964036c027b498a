"""Exhaustive depth-first search, the ground truth for small instances."""

from __future__ import annotations

import math
import time

from ..core import UNASSIGNED, Assignment, ProblemInstance, SolveResult, fits, total_profit
from ..errors import InstanceTooLargeError, ParameterError
from ._packing import make_result

DEFAULT_NODE_BUDGET = 10**8


def solve_exact(instance: ProblemInstance, node_budget: int = DEFAULT_NODE_BUDGET) -> SolveResult:
    """Provably optimal assignment by enumeration over ``{unassigned, 1..K}`` per item.

    Items are decided in index order and choices are tried in the order
    unassigned, 1, 2, ..., so the first optimum met is the lexicographically
    smallest one; later solutions replace it only on strict improvement.
    Branches that overfill a knapsack are cut, and so are branches whose
    optimistic completion cannot beat the incumbent.

    Raises
    ------
    InstanceTooLargeError
        If the full tree, ``(K + 1) ** N`` leaves, exceeds ``node_budget``.
    """
    if int(node_budget) != node_budget or node_budget < 1:
        raise ParameterError(f"node_budget must be an integer >= 1, got {node_budget}")
    n, k = instance.n, instance.k
    if (k + 1) ** n > node_budget:
        raise InstanceTooLargeError(
            f"instance too large: {k + 1}^{n} assignments exceed the node budget of {node_budget}"
        )
    started = time.perf_counter()

    w = instance.weights.tolist()
    p = instance.profits.tolist()
    pp = instance.pair_profits.tolist()
    caps = instance.capacities.tolist()
    integral = instance.is_integral

    # profit still obtainable from pairs with both ends at depth >= d
    pairs_after = [0.0] * (n + 1)
    for d in range(n - 1, -1, -1):
        pairs_after[d] = pairs_after[d + 1] + math.fsum(pp[d][d + 1 :])

    slots = [UNASSIGNED] * n
    members: list[list[int]] = [[] for _ in range(k)]
    loads = [0.0] * k
    # joint profit item j would collect from knapsack u's current residents
    attraction = [[0.0] * n for _ in range(k)]

    best_slots: list[int] | None = None
    best_value = -math.inf
    nodes = 0

    def room(u: int, i: int) -> bool:
        total = loads[u] + w[i]
        slack = 1e-12 * max(caps[u], 1.0)
        if total < caps[u] - slack:
            return True
        if total > caps[u] + slack:
            return False
        return fits((w[m] for m in members[u]), w[i], caps[u])

    def optimistic(d: int) -> float:
        extra = pairs_after[d]
        for r in range(d, n):
            reach = [attraction[u][r] for u in range(k) if room(u, r)]
            if reach:
                extra += p[r] + max(reach)
        return extra

    def hopeless(upper: float) -> bool:
        if best_slots is None:
            return False
        if integral:
            return upper <= best_value
        return upper < best_value - 1e-9 * max(1.0, abs(best_value))

    def visit(d: int, value: float) -> None:
        nonlocal best_slots, best_value, nodes
        nodes += 1
        if d == n:
            if best_slots is not None and not integral and value < best_value - 1e-9 * max(1.0, abs(best_value)):
                return
            exact = total_profit(instance, Assignment(tuple(slots))) if not integral else value
            if exact > best_value:
                best_value, best_slots = exact, slots.copy()
            return
        if hopeless(value + optimistic(d)):
            return
        visit(d + 1, value)
        for u in range(k):
            if not room(u, d):
                continue
            gain = p[d] + attraction[u][d]
            saved_row = attraction[u][d + 1 :]
            saved_load = loads[u]
            row = attraction[u]
            pair_row = pp[d]
            for r in range(d + 1, n):
                row[r] += pair_row[r]
            slots[d] = u + 1
            members[u].append(d)
            loads[u] = saved_load + w[d]
            visit(d + 1, value + gain)
            loads[u] = saved_load
            members[u].pop()
            slots[d] = UNASSIGNED
            row[d + 1 :] = saved_row

    visit(0, 0.0)
    assert best_slots is not None
    params = {"node_budget": int(node_budget)}
    return make_result(instance, Assignment(tuple(best_slots)), "exact", params, None, started, {"nodes": nodes})
