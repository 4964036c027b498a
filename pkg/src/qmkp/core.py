"""
Data model and objective for the quadratic multiple knapsack problem.

Items are indexed from 0 (they are positions in Python sequences).  Knapsacks
are labelled ``1..K`` and an assignment slot of ``0`` (:data:`UNASSIGNED`)
means the item is left out.  The same encoding is used by the solution files
in :mod:`qmkp.io`.

Each unordered pair of co-located items earns its joint profit exactly once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .errors import ContractError, StructuralError

__all__ = [
    "UNASSIGNED",
    "ProblemInstance",
    "Assignment",
    "FeasibilityReport",
    "SolveResult",
    "total_profit",
    "knapsack_load",
    "check_feasibility",
    "profit_delta_add",
    "fits",
    "objectives_match",
]

UNASSIGNED = 0


def _frozen_array(values, name: str, ndim: int) -> np.ndarray:
    try:
        arr = np.array(values, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise StructuralError(f"{name} must be numeric: {exc}") from None
    if arr.ndim != ndim:
        raise StructuralError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise StructuralError(f"{name} must be finite")
    if np.any(arr < 0):
        raise StructuralError(f"{name} must be non-negative")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """
    An immutable QMKP instance.

    Attributes
    ----------
    name : str
        Identifier without whitespace.
    weights, profits : np.ndarray
        Length-N item weights and linear profits.
    pair_profits : np.ndarray
        Symmetric N x N joint-profit matrix with zero diagonal.
    capacities : np.ndarray
        Length-K knapsack capacities; knapsack ``u`` has capacity
        ``capacities[u - 1]``.
    """

    name: str
    weights: np.ndarray
    profits: np.ndarray
    pair_profits: np.ndarray
    capacities: np.ndarray

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not self.name or any(c.isspace() for c in self.name):
            raise StructuralError(f"instance name must be non-empty without whitespace: {self.name!r}")
        w = _frozen_array(self.weights, "weights", 1)
        p = _frozen_array(self.profits, "profits", 1)
        pp = _frozen_array(self.pair_profits, "pair_profits", 2)
        c = _frozen_array(self.capacities, "capacities", 1)
        n = w.shape[0]
        if n < 1:
            raise StructuralError("an instance needs at least one item")
        if c.shape[0] < 1:
            raise StructuralError("an instance needs at least one knapsack")
        if p.shape != (n,):
            raise StructuralError(f"expected {n} profits, got {p.shape[0]}")
        if pp.shape != (n, n):
            raise StructuralError(f"pair_profits must be {n}x{n}, got {pp.shape}")
        if np.any(np.diag(pp) != 0):
            raise StructuralError("pair_profits must have a zero diagonal")
        if not np.array_equal(pp, pp.T):
            raise StructuralError("pair_profits must be symmetric")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "profits", p)
        object.__setattr__(self, "pair_profits", pp)
        object.__setattr__(self, "capacities", c)

    @property
    def n(self) -> int:
        return int(self.weights.shape[0])

    @property
    def k(self) -> int:
        return int(self.capacities.shape[0])

    @property
    def is_integral(self) -> bool:
        """True when every number in the instance is integer-valued."""
        return all(
            bool(np.all(np.floor(a) == a))
            for a in (self.weights, self.profits, self.pair_profits, self.capacities)
        )

    def capacity(self, u: int) -> float:
        _check_knapsack(self, u)
        return float(self.capacities[u - 1])

    def replace(self, **changes: Any) -> "ProblemInstance":
        fields = {
            "name": self.name,
            "weights": self.weights,
            "profits": self.profits,
            "pair_profits": self.pair_profits,
            "capacities": self.capacities,
        }
        fields.update(changes)
        return ProblemInstance(**fields)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProblemInstance):
            return NotImplemented
        return (
            self.name == other.name
            and np.array_equal(self.weights, other.weights)
            and np.array_equal(self.profits, other.profits)
            and np.array_equal(self.pair_profits, other.pair_profits)
            and np.array_equal(self.capacities, other.capacities)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"ProblemInstance(name={self.name!r}, n={self.n}, k={self.k})"


@dataclass(frozen=True)
class Assignment:
    """Per-item knapsack labels; ``0`` marks an unassigned item.

    Labels are only checked for being non-negative integers here.  Whether
    they fall inside ``1..K`` depends on the instance and is reported by
    :func:`check_feasibility`.
    """

    slots: tuple[int, ...]

    def __post_init__(self) -> None:
        slots = tuple(int(s) for s in self.slots)
        for i, (raw, s) in enumerate(zip(self.slots, slots)):
            if s != raw or s < 0:
                raise StructuralError(f"slot {i} must be a non-negative integer, got {raw!r}")
        object.__setattr__(self, "slots", slots)

    @classmethod
    def empty(cls, n: int) -> "Assignment":
        return cls((UNASSIGNED,) * n)

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> "Assignment":
        """Build from a binary N x K matrix whose rows sum to at most one."""
        slots = []
        for i, row in enumerate(matrix):
            hits = [u for u, a in enumerate(row, start=1) if a]
            if len(hits) > 1:
                raise StructuralError(f"item {i} is assigned to knapsacks {hits}")
            slots.append(hits[0] if hits else UNASSIGNED)
        return cls(tuple(slots))

    def __len__(self) -> int:
        return len(self.slots)

    def members(self, u: int) -> list[int]:
        return [i for i, s in enumerate(self.slots) if s == u]

    def assigned(self) -> list[int]:
        return [i for i, s in enumerate(self.slots) if s != UNASSIGNED]

    def with_item(self, item: int, u: int) -> "Assignment":
        slots = list(self.slots)
        slots[item] = u
        return Assignment(tuple(slots))

    def to_matrix(self, k: int) -> np.ndarray:
        out = np.zeros((len(self.slots), k), dtype=np.int64)
        for i, s in enumerate(self.slots):
            if s != UNASSIGNED:
                out[i, s - 1] = 1
        return out


@dataclass(frozen=True)
class FeasibilityReport:
    capacity_violations: tuple[tuple[int, float, float], ...] = ()
    index_violations: tuple[tuple[int, int], ...] = ()

    @property
    def feasible(self) -> bool:
        return not self.capacity_violations and not self.index_violations

    def summary(self) -> str:
        lines = [f"feasible={'true' if self.feasible else 'false'}"]
        for u, load, cap in self.capacity_violations:
            lines.append(f"capacity violation: knapsack {u} load {_fmt(load)} > capacity {_fmt(cap)}")
        for i, s in self.index_violations:
            lines.append(f"index violation: item {i + 1} has knapsack label {s}")
        return "\n".join(lines)


@dataclass(frozen=True)
class SolveResult:
    """Outcome of one solver run.

    ``objective`` is always recomputed with :func:`total_profit` on the final
    assignment.  ``stats`` carries solver-specific counters such as the
    number of improvement rounds.
    """

    assignment: Assignment
    objective: float
    algorithm: str
    params: Mapping[str, Any] = field(default_factory=dict)
    seed: int | None = None
    runtime_ms: float = 0.0
    instance: str = ""
    stats: Mapping[str, Any] = field(default_factory=dict)


def _fmt(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def _check_dims(instance: ProblemInstance, assignment: Assignment) -> None:
    if len(assignment.slots) != instance.n:
        raise StructuralError(
            f"assignment has {len(assignment.slots)} slots but the instance has {instance.n} items"
        )


def _check_knapsack(instance: ProblemInstance, u: int) -> None:
    if not 1 <= u <= instance.k:
        raise StructuralError(f"knapsack {u} outside 1..{instance.k}")


def _groups(instance: ProblemInstance, assignment: Assignment) -> dict[int, list[int]]:
    groups: dict[int, list[int]] = {}
    for i, s in enumerate(assignment.slots):
        if s != UNASSIGNED:
            groups.setdefault(s, []).append(i)
    return groups


def total_profit(instance: ProblemInstance, assignment: Assignment) -> float:
    """Linear profits of assigned items plus joint profits of co-located pairs.

    Feasibility is not required.  Labels outside ``1..K`` are grouped like any
    other label, so an infeasible assignment still has a well-defined value.
    """
    _check_dims(instance, assignment)
    terms: list[float] = []
    pp = instance.pair_profits
    for members in _groups(instance, assignment).values():
        idx = np.asarray(members)
        terms.extend(instance.profits[idx].tolist())
        if len(members) > 1:
            block = pp[np.ix_(idx, idx)]
            terms.extend(block[np.triu_indices(len(members), k=1)].tolist())
    return math.fsum(terms)


def knapsack_load(instance: ProblemInstance, assignment: Assignment, u: int) -> float:
    _check_dims(instance, assignment)
    _check_knapsack(instance, u)
    return math.fsum(instance.weights[i] for i, s in enumerate(assignment.slots) if s == u)


def check_feasibility(instance: ProblemInstance, assignment: Assignment) -> FeasibilityReport:
    _check_dims(instance, assignment)
    index_violations = tuple(
        (i, s) for i, s in enumerate(assignment.slots) if s != UNASSIGNED and s > instance.k
    )
    capacity_violations = []
    for u in range(1, instance.k + 1):
        load = knapsack_load(instance, assignment, u)
        cap = float(instance.capacities[u - 1])
        if load > cap:
            capacity_violations.append((u, load, cap))
    return FeasibilityReport(tuple(capacity_violations), index_violations)


def profit_delta_add(instance: ProblemInstance, assignment: Assignment, item: int, u: int) -> float:
    """Objective gain from moving an unassigned ``item`` into knapsack ``u``."""
    _check_dims(instance, assignment)
    _check_knapsack(instance, u)
    if not 0 <= item < instance.n:
        raise StructuralError(f"item {item} outside 0..{instance.n - 1}")
    if assignment.slots[item] != UNASSIGNED:
        raise ContractError(f"item {item} is already in knapsack {assignment.slots[item]}")
    row = instance.pair_profits[item]
    return math.fsum([instance.profits[item], *(row[j] for j in assignment.members(u))])


def fits(member_weights: Iterable[float], weight: float, capacity: float) -> bool:
    """Whether a knapsack holding ``member_weights`` can also take ``weight``.

    Loads are compared as correctly rounded sums, the same way
    :func:`check_feasibility` computes them, so a solver using this test never
    produces a capacity violation.
    """
    return math.fsum([*member_weights, weight]) <= capacity


def objectives_match(a: float, b: float, integral: bool) -> bool:
    if integral:
        return a == b
    return a == b or abs(a - b) <= 1e-12 * max(abs(a), abs(b))
