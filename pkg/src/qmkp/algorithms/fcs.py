"""Fix-and-complete local search on top of the constructive procedure."""

from __future__ import annotations

import math
import time

import numpy as np

from ..core import UNASSIGNED, Assignment, ProblemInstance, SolveResult, total_profit
from ..errors import ParameterError
from ._packing import make_result
from .cp import complete

DEFAULT_ALPHA = 0.5
DEFAULT_STAGNATION_LIMIT = 100


def solve_fcs(
    instance: ProblemInstance,
    alpha: float = DEFAULT_ALPHA,
    stagnation_limit: int = DEFAULT_STAGNATION_LIMIT,
    seed: int = 0,
) -> SolveResult:
    """Improve the constructive solution by fixing a random part and re-completing.

    Parameters
    ----------
    alpha : float
        Fraction of the incumbent's assigned items kept in place each round,
        rounded up, in the open interval (0, 1).
    stagnation_limit : int
        Number of consecutive rounds without strict improvement after which
        the search stops.
    seed : int
        Seed for the item sampling; equal inputs give equal results.

    The returned objective is never below that of :func:`solve_cp`.
    """
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")
    if int(stagnation_limit) != stagnation_limit or stagnation_limit < 1:
        raise ParameterError(f"stagnation_limit must be an integer >= 1, got {stagnation_limit}")
    if int(seed) != seed or seed < 0:
        raise ParameterError(f"seed must be a non-negative integer, got {seed}")
    stagnation_limit = int(stagnation_limit)
    started = time.perf_counter()
    rng = np.random.default_rng(int(seed))

    best = complete(instance)
    best_value = total_profit(instance, best)
    stale = rounds = improvements = 0
    while stale < stagnation_limit:
        rounds += 1
        placed = best.assigned()
        keep = rng.choice(len(placed), size=math.ceil(alpha * len(placed)), replace=False)
        kept = {placed[j] for j in keep.tolist()}
        partial = Assignment(
            tuple(s if i in kept else UNASSIGNED for i, s in enumerate(best.slots))
        )
        candidate = complete(instance, partial)
        value = total_profit(instance, candidate)
        if value > best_value:
            best, best_value = candidate, value
            stale = 0
            improvements += 1
        else:
            stale += 1

    params = {"alpha": alpha, "stagnation_limit": stagnation_limit}
    stats = {"rounds": rounds, "improvements": improvements}
    return make_result(instance, best, "fcs", params, int(seed), started, stats)
