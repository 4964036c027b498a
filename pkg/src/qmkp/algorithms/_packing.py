"""Mutable packing state shared by the constructive solvers."""

from __future__ import annotations

import math
import time
from typing import Any, Mapping

import numpy as np

from ..core import UNASSIGNED, Assignment, ProblemInstance, SolveResult, fits, total_profit


class PackingState:
    """Partial solution with the marginal-profit table kept up to date.

    ``gain[i, u]`` is the profit of adding item ``i`` to knapsack ``u + 1``
    given its current residents.  Columns are 0-based here; slots stay
    1-based.
    """

    def __init__(self, instance: ProblemInstance, slots=None):
        self.instance = instance
        n, k = instance.n, instance.k
        self.w = instance.weights
        self.pp = instance.pair_profits
        self.caps = instance.capacities
        self.slots = [UNASSIGNED] * n
        self.members: list[list[int]] = [[] for _ in range(k)]
        self.loads = np.zeros(k)
        self.unassigned = np.ones(n, dtype=bool)
        self.gain = np.repeat(instance.profits[:, None], k, axis=1)
        # pairs the vectorised screen let through but the exact test rejected
        self.blocked = np.zeros((n, k), dtype=bool)
        self._margin = 1e-12 * np.maximum(self.caps, 1.0)
        self._positive_w = self.w > 0
        if slots is not None:
            for i, s in enumerate(slots):
                if s != UNASSIGNED:
                    self._place(i, s - 1)

    def candidates(self, column: int | None = None) -> np.ndarray:
        """Boolean N x K mask of (unassigned item, knapsack) pairs that may fit."""
        room = self.w[:, None] + self.loads[None, :] <= (self.caps + self._margin)[None, :]
        mask = room & self.unassigned[:, None] & ~self.blocked
        if column is not None:
            keep = np.zeros(mask.shape[1], dtype=bool)
            keep[column] = True
            mask &= keep[None, :]
        return mask

    def best(self, mask: np.ndarray) -> tuple[int, int] | None:
        """Highest value-density pair under ``mask``.

        Zero-weight items with a positive gain outrank every finite density
        and are ordered among themselves by gain.  Ties go to the lowest item,
        then the lowest knapsack (row-major ``argmax`` order).
        """
        if not mask.any():
            return None
        free = mask & ~self._positive_w[:, None] & (self.gain > 0)
        if free.any():
            scores = np.where(free, self.gain, -np.inf)
        else:
            density = np.divide(
                self.gain, self.w[:, None], out=np.zeros_like(self.gain), where=self._positive_w[:, None]
            )
            scores = np.where(mask, density, -np.inf)
        i, col = np.unravel_index(int(np.argmax(scores)), scores.shape)
        return int(i), int(col)

    def try_place(self, i: int, col: int) -> bool:
        if not fits(self.w[self.members[col]], self.w[i], self.caps[col]):
            self.blocked[i, col] = True
            return False
        self._place(i, col)
        return True

    def _place(self, i: int, col: int) -> None:
        self.slots[i] = col + 1
        self.members[col].append(i)
        self.unassigned[i] = False
        self.loads[col] = math.fsum(self.w[self.members[col]])
        self.gain[:, col] += self.pp[:, i]

    def fill(self, column: int | None = None) -> None:
        """Insert best pairs until nothing else fits (optionally one knapsack only)."""
        while True:
            pick = self.best(self.candidates(column))
            if pick is None:
                return
            self.try_place(*pick)

    def assignment(self) -> Assignment:
        return Assignment(tuple(self.slots))


def make_result(
    instance: ProblemInstance,
    assignment: Assignment,
    algorithm: str,
    params: Mapping[str, Any],
    seed: int | None,
    started: float,
    stats: Mapping[str, Any] | None = None,
) -> SolveResult:
    return SolveResult(
        assignment=assignment,
        objective=total_profit(instance, assignment),
        algorithm=algorithm,
        params=dict(params),
        seed=seed,
        runtime_ms=(time.perf_counter() - started) * 1000.0,
        instance=instance.name,
        stats=dict(stats or {}),
    )
