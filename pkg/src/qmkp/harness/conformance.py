"""Generic test battery that any registered solver is expected to pass."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..algorithms import SolverSpec, registry_get, solve_exact
from ..core import (
    UNASSIGNED,
    ProblemInstance,
    SolveResult,
    check_feasibility,
    objectives_match,
    total_profit,
)

FEASIBILITY_INSTANCES = 200
DETERMINISM_INSTANCES = 20
SATURATION_INSTANCES = 20
ZERO_CAPACITY_INSTANCES = 20
ORACLE_INSTANCES = 25


def random_instance(
    rng: np.random.Generator,
    name: str,
    n: int,
    k: int,
    integral: bool = True,
    zero_weights: bool = False,
    zero_capacities: bool = False,
) -> ProblemInstance:
    """Mixed-data instance for stress testing.

    Real-valued instances draw from continuous ranges.  ``zero_weights``
    zeroes a random subset of weights, ``zero_capacities`` a random non-empty
    subset of capacities.
    """
    if integral:
        w = rng.integers(1, 21, size=n).astype(float)
        p = rng.integers(0, 31, size=n).astype(float)
        vals = rng.integers(0, 31, size=(n, n)).astype(float)
    else:
        w = rng.uniform(0.1, 20.0, size=n)
        p = rng.uniform(0.0, 30.0, size=n)
        vals = rng.uniform(0.0, 30.0, size=(n, n))
    vals *= rng.random((n, n)) < rng.uniform(0.2, 1.0)
    upper = np.triu(vals, 1)
    pp = upper + upper.T
    if zero_weights:
        w[rng.random(n) < 0.3] = 0.0
    ratio = rng.uniform(0.2, 1.2)
    caps = np.full(k, 0.0)
    for u in range(k):
        share = ratio * w.sum() / k * rng.uniform(0.5, 1.5)
        caps[u] = float(np.ceil(share)) if integral else share
    if zero_capacities:
        caps[rng.random(k) < 0.5] = 0.0
        caps[rng.integers(k)] = 0.0
    return ProblemInstance(name, w, p, pp, caps)


def battery(count: int, seed: int, max_n: int, max_k: int) -> list[ProblemInstance]:
    """``count`` seeded instances cycling through the edge-case families."""
    out = []
    for idx in range(count):
        rng = np.random.default_rng([seed, idx])
        n = int(rng.integers(1, max_n + 1))
        k = int(rng.integers(1, max_k + 1))
        family = idx % 5
        out.append(
            random_instance(
                rng,
                f"battery{seed}_{idx}",
                n,
                k,
                integral=family in (0, 2, 3),
                zero_weights=family in (2, 4),
                zero_capacities=family in (3, 4),
            )
        )
    return out


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ConformanceReport:
    solver: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name.startswith(name):
                return c
        raise KeyError(name)

    def format(self) -> str:
        lines = [f"conformance {self.solver}"]
        for c in self.checks:
            lines.append(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}")
        lines.append("result: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


def _size(spec: SolverSpec, n: int, k: int) -> tuple[int, int]:
    if spec.max_size is None:
        return n, k
    return min(n, spec.max_size[0]), min(k, spec.max_size[1])


def _run(spec: SolverSpec, instance: ProblemInstance, seed: int) -> SolveResult:
    return spec.run(instance, seed=seed)


def _tally(
    label: str,
    cases: list[tuple[ProblemInstance, int]],
    probe: Callable[[ProblemInstance, int], str | None],
) -> CheckResult:
    failures = []
    for instance, seed in cases:
        try:
            problem = probe(instance, seed)
        except Exception as exc:  # a crashing solver fails the check, not the suite
            problem = f"{type(exc).__name__}: {exc}"
        if problem:
            failures.append(f"{instance.name}: {problem}")
    ok = len(cases) - len(failures)
    detail = f"{ok}/{len(cases)}"
    if failures:
        detail += "; first failure " + failures[0]
    return CheckResult(label, not failures, detail)


def conformance_suite(solver: str | SolverSpec, seed: int = 2022) -> ConformanceReport:
    """Run checks (a) to (f) against one solver.

    (a) feasibility on 200 random instances, (b) stored objective equals the
    recomputed one, (c) repeat runs with the same seed are identical,
    (d) every item is packed when all fit into knapsack 1 and profits are
    positive, (e) nothing is packed when every capacity is zero, and (f) no
    objective exceeds the exact optimum on 25 tiny instances.
    """
    spec = registry_get(solver) if isinstance(solver, str) else solver
    report = ConformanceReport(spec.name)
    max_n, max_k = _size(spec, 30, 5)

    instances = battery(FEASIBILITY_INSTANCES, seed, max_n, max_k)
    cases = [(inst, idx) for idx, inst in enumerate(instances)]
    results: dict[str, SolveResult] = {}

    def feasible(instance, run_seed):
        result = _run(spec, instance, run_seed)
        results[instance.name] = result
        rep = check_feasibility(instance, result.assignment)
        return None if rep.feasible else rep.summary().replace("\n", "; ")

    report.checks.append(_tally("(a) feasibility", cases, feasible))

    def consistent(instance, run_seed):
        result = results.get(instance.name)
        if result is None:
            return "no result from check (a)"
        recomputed = total_profit(instance, result.assignment)
        if not objectives_match(result.objective, recomputed, instance.is_integral):
            return f"stored {result.objective!r} != recomputed {recomputed!r}"
        return None

    report.checks.append(_tally("(b) objective consistency", cases, consistent))

    def repeatable(instance, run_seed):
        first, second = _run(spec, instance, run_seed), _run(spec, instance, run_seed)
        if first.assignment != second.assignment or first.objective != second.objective:
            return "two runs with the same seed differ"
        return None

    report.checks.append(_tally("(c) determinism", cases[:DETERMINISM_INSTANCES], repeatable))

    saturated = []
    for idx in range(SATURATION_INSTANCES):
        rng = np.random.default_rng([seed, 1, idx])
        n, k = _size(spec, int(rng.integers(1, 31)), int(rng.integers(1, 6)))
        inst = random_instance(rng, f"saturation{idx}", n, k, integral=idx % 2 == 0, zero_weights=idx % 3 == 0)
        p = np.maximum(inst.profits, 1.0)
        caps = np.array(inst.capacities)
        caps[0] = np.ceil(inst.weights.sum())
        saturated.append((inst.replace(profits=p, capacities=caps), idx))

    def all_packed(instance, run_seed):
        result = _run(spec, instance, run_seed)
        left = [i for i, s in enumerate(result.assignment.slots) if s == UNASSIGNED]
        return f"items {left} left out" if left else None

    report.checks.append(_tally("(d) saturation", saturated, all_packed))

    empty = []
    for idx in range(ZERO_CAPACITY_INSTANCES):
        rng = np.random.default_rng([seed, 2, idx])
        n, k = _size(spec, int(rng.integers(1, 31)), int(rng.integers(1, 6)))
        inst = random_instance(rng, f"zerocap{idx}", n, k, integral=idx % 2 == 0)
        empty.append((inst.replace(capacities=np.zeros(k)), idx))

    def nothing_packed(instance, run_seed):
        result = _run(spec, instance, run_seed)
        if result.assignment.assigned() or result.objective != 0:
            return f"packed {result.assignment.assigned()} with objective {result.objective!r}"
        return None

    report.checks.append(_tally("(e) zero capacity", empty, nothing_packed))

    tiny = [(inst, idx) for idx, inst in enumerate(battery(ORACLE_INSTANCES, seed + 1, 6, 2))]
    ties = 0

    def bounded(instance, run_seed):
        nonlocal ties
        result = _run(spec, instance, run_seed)
        best = solve_exact(instance).objective
        if result.objective == best:
            ties += 1
        if result.objective > best and not objectives_match(result.objective, best, instance.is_integral):
            return f"objective {result.objective!r} exceeds optimum {best!r}"
        return None

    oracle = _tally("(f) oracle bound", tiny, bounded)
    oracle.detail += f"; {ties} at the optimum"
    report.checks.append(oracle)
    return report
