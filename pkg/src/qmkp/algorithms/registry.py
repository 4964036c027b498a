"""Named solvers behind one calling convention.

Every solver is a function ``f(instance, **params) -> SolveResult``; seeded
solvers additionally accept ``seed``.  Registering a function together with
its parameter schema is all a new algorithm needs to be run from the CLI,
benchmarked, and checked by the conformance suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

from ..core import ProblemInstance, SolveResult
from ..errors import ParameterError
from .baseline import solve_random
from .cp import solve_cp
from .exact import DEFAULT_NODE_BUDGET, solve_exact
from .fcs import DEFAULT_ALPHA, DEFAULT_STAGNATION_LIMIT, solve_fcs
from .greedy import solve_greedy


@dataclass(frozen=True)
class Param:
    """Declared type, default and legal interval of one solver parameter."""

    type: type
    default: Any
    low: float = -math.inf
    high: float = math.inf
    low_open: bool = False
    high_open: bool = False
    help: str = ""

    def __post_init__(self) -> None:
        self.check("default", self.default)

    def check(self, name: str, value: Any) -> Any:
        if isinstance(value, str):
            try:
                value = self.type(value)
            except ValueError:
                raise ParameterError(f"{name}: cannot parse {value!r} as {self.type.__name__}") from None
        if self.type is int and (isinstance(value, bool) or int(value) != value):
            raise ParameterError(f"{name} must be an integer, got {value!r}")
        value = self.type(value)
        too_low = value <= self.low if self.low_open else value < self.low
        too_high = value >= self.high if self.high_open else value > self.high
        if too_low or too_high:
            raise ParameterError(f"{name}={value} outside {self.describe_range()}")
        return value

    def describe_range(self) -> str:
        lo = "(" if self.low_open else "["
        hi = ")" if self.high_open else "]"
        return f"{lo}{self.low}, {self.high}{hi}"


@dataclass(frozen=True)
class SolverSpec:
    """A registered solver.

    ``max_size`` optionally caps the ``(n, k)`` of instances the conformance
    battery feeds it; the exact solver uses it because its work grows as
    ``(k + 1) ** n``.
    """

    name: str
    func: Callable[..., SolveResult]
    params_schema: Mapping[str, Param] = field(default_factory=dict)
    deterministic: bool = True
    description: str = ""
    max_size: tuple[int, int] | None = None

    def resolve(self, params: Mapping[str, Any] | None = None) -> dict[str, Any]:
        """Validate ``params`` and fill in defaults for everything omitted."""
        params = dict(params or {})
        unknown = sorted(set(params) - set(self.params_schema))
        if unknown:
            raise ParameterError(f"solver {self.name!r} has no parameter(s) {', '.join(unknown)}")
        return {
            key: spec.check(key, params.get(key, spec.default))
            for key, spec in self.params_schema.items()
        }

    def run(
        self,
        instance: ProblemInstance,
        params: Mapping[str, Any] | None = None,
        seed: int | None = None,
    ) -> SolveResult:
        kwargs = self.resolve(params)
        if not self.deterministic:
            kwargs["seed"] = 0 if seed is None else seed
        return self.func(instance, **kwargs)


_SEED_NOTE = "seeded: equal seeds give equal results"

_REGISTRY: dict[str, SolverSpec] = {}


def register(spec: SolverSpec) -> SolverSpec:
    if spec.name in _REGISTRY:
        raise ValueError(f"solver {spec.name!r} is already registered")
    _REGISTRY[spec.name] = spec
    return spec


def unregister(name: str) -> None:
    _REGISTRY.pop(name, None)


def registry_list() -> list[SolverSpec]:
    return list(_REGISTRY.values())


def registry_get(name: str) -> SolverSpec:
    try:
        return _REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(_REGISTRY))
        raise KeyError(f"unknown algorithm {name!r} (known: {known})") from None


register(SolverSpec("greedy", solve_greedy, description="knapsack-sequential value-density greedy"))
register(SolverSpec("cp", solve_cp, description="constructive procedure, global best-density insertion"))
register(
    SolverSpec(
        "fcs",
        solve_fcs,
        {
            "alpha": Param(float, DEFAULT_ALPHA, 0.0, 1.0, low_open=True, high_open=True,
                           help="fraction of assigned items kept each round (rounded up)"),
            "stagnation_limit": Param(int, DEFAULT_STAGNATION_LIMIT, 1,
                                      help="rounds without strict improvement before stopping"),
        },
        deterministic=False,
        description="fix and complete local search started from cp; " + _SEED_NOTE,
    )
)
register(SolverSpec("random", solve_random, deterministic=False,
                    description="random feasible packing baseline; " + _SEED_NOTE))
register(
    SolverSpec(
        "exact",
        solve_exact,
        {"node_budget": Param(int, DEFAULT_NODE_BUDGET, 1, help="maximum (K+1)^N before refusing")},
        description="exhaustive enumeration, optimal for small instances",
        max_size=(8, 3),
    )
)
