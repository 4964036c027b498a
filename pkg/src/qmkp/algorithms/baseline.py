"""Uniform random feasible packing, used as a comparison floor."""

import time

import numpy as np

from ..core import ProblemInstance, SolveResult
from ..errors import ParameterError
from ._packing import PackingState, make_result


def solve_random(instance: ProblemInstance, seed: int = 0) -> SolveResult:
    """Visit items in a random order and drop each into a random knapsack with room."""
    if int(seed) != seed or seed < 0:
        raise ParameterError(f"seed must be a non-negative integer, got {seed}")
    started = time.perf_counter()
    rng = np.random.default_rng(int(seed))
    state = PackingState(instance)
    for i in rng.permutation(instance.n).tolist():
        while True:
            options = np.flatnonzero(state.candidates()[i])
            if options.size == 0:
                break
            if state.try_place(i, int(options[rng.integers(options.size)])):
                break
    return make_result(instance, state.assignment(), "random", {}, int(seed), started)
