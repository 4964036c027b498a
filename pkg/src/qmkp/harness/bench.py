"""Benchmark runner: every instance x algorithm x repeat, written as CSV."""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from ..algorithms import registry_get
from ..core import ProblemInstance, check_feasibility, objectives_match, total_profit
from ..io import format_number

CSV_HEADER = ["instance", "n", "k", "algorithm", "params", "seed", "repeat", "objective", "feasible", "runtime_ms"]


@dataclass(frozen=True)
class BenchRecord:
    instance: str
    n: int
    k: int
    algorithm: str
    params: str
    seed: int
    repeat: int
    objective: float
    feasible: bool
    runtime_ms: float

    def row(self) -> list[str]:
        return [
            self.instance,
            str(self.n),
            str(self.k),
            self.algorithm,
            self.params,
            str(self.seed),
            str(self.repeat),
            format_number(self.objective),
            "true" if self.feasible else "false",
            f"{self.runtime_ms:.3f}",
        ]


def canonical_params(params: Mapping[str, Any]) -> str:
    return ";".join(f"{key}={_render(params[key])}" for key in sorted(params))


def _render(value: Any) -> str:
    if isinstance(value, float):
        return format_number(value)
    return str(value)


def run_cell(
    instance: ProblemInstance,
    algorithm: str,
    params: Mapping[str, Any],
    seed: int,
    repeat: int,
) -> BenchRecord:
    spec = registry_get(algorithm)
    resolved = spec.resolve(params)
    result = spec.run(instance, resolved, seed=seed)
    feasible = check_feasibility(instance, result.assignment).feasible
    recomputed = total_profit(instance, result.assignment)
    if not objectives_match(result.objective, recomputed, instance.is_integral):
        feasible = False
    return BenchRecord(
        instance=instance.name,
        n=instance.n,
        k=instance.k,
        algorithm=algorithm,
        params=canonical_params(resolved),
        seed=seed,
        repeat=repeat,
        objective=recomputed,
        feasible=feasible,
        runtime_ms=result.runtime_ms,
    )


def _cell(args: tuple) -> BenchRecord:
    return run_cell(*args)


def run_bench(
    instances: Sequence[ProblemInstance],
    algorithms: Sequence[str],
    repeats: int = 1,
    base_seed: int = 0,
    params: Mapping[str, Mapping[str, Any]] | None = None,
    jobs: int = 1,
) -> list[BenchRecord]:
    """Solve every cell and return the records in (instance, algorithm, repeat) order.

    Repeat ``r`` runs with seed ``base_seed + r``.  With ``jobs > 1`` cells
    are spread over worker processes; the output only differs in
    ``runtime_ms``.
    """
    params = params or {}
    for name in algorithms:
        registry_get(name).resolve(params.get(name))
    cells = [
        (inst, name, dict(params.get(name, {})), base_seed + r, r)
        for inst in instances
        for name in algorithms
        for r in range(repeats)
    ]
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_cell, cells))
    else:
        records = [_cell(c) for c in cells]
    return sorted(records, key=lambda rec: (rec.instance, rec.algorithm, rec.repeat))


def render_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow(rec.row())
    return buf.getvalue()


def write_csv(records: Iterable[BenchRecord], destination: str | os.PathLike) -> None:
    Path(destination).write_text(render_csv(records), encoding="utf-8")


def find_instances(directory: str | os.PathLike) -> list[Path]:
    return sorted(Path(directory).glob("*.qmkp"))
