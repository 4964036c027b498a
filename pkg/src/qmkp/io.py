"""
Reading and writing instances and solutions, legacy import, and instance
generation.

Three line-oriented text formats are handled here:

* ``.qmkp`` instances::

      QMKP 1
      name: t1
      n: 4
      k: 2
      weights: 2 3 4 5
      capacities: 5 7
      profits: 1 2 3 4
      pairs:
      1 2 0
      1 3
      1

  Row ``r`` of the pair block lists the joint profits of item ``r`` with
  items ``r+1 .. N``.

* ``.qmkp-sol`` solutions: magic ``QMKP-SOL 1`` followed by ``instance:``,
  ``algorithm:``, ``objective:`` and ``assignment:`` lines, with ``0``
  marking an unassigned item.

* legacy single-knapsack quadratic files: a name line, the item count, the
  linear profits, ``N-1`` triangular pair rows, a blank line, the capacity
  and the weights.

Integral numbers are written without a decimal point, everything else in the
shortest positional decimal that reads back to the same double.
"""

from __future__ import annotations

import math
import os
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterator, Sequence, Union

import numpy as np

from .core import Assignment, ProblemInstance, SolveResult
from .errors import ConstraintViolationError, FormatError, ParameterError, StructuralError

__all__ = [
    "GeneratorConfig",
    "SolutionFile",
    "dumps_instance",
    "loads_instance",
    "save_instance",
    "load_instance",
    "import_triangular",
    "parse_triangular",
    "dumps_solution",
    "loads_solution",
    "save_solution",
    "load_solution",
    "load_assignment_matrix",
    "parse_assignment_matrix",
    "generate_instance",
    "equal_capacity",
    "format_number",
]

PathOrFile = Union[str, "os.PathLike[str]", IO[str]]

INSTANCE_MAGIC = "QMKP 1"
SOLUTION_MAGIC = "QMKP-SOL 1"
DEFAULT_CAPACITY_RATIO = 0.8


def format_number(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot render non-finite value {x}")
    if x == 0:
        return "0"  # also folds -0.0
    return np.format_float_positional(x, unique=True, trim="-")


def _join(values: Sequence[float]) -> str:
    return " ".join(format_number(v) for v in values)


def _parse_number(token: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise FormatError(f"not a number: {token!r}", lineno) from None
    if not math.isfinite(value):
        raise FormatError(f"non-finite value {token!r}", lineno)
    if value < 0:
        raise FormatError(f"negative value {token!r}", lineno)
    return value


def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got {token!r}", lineno) from None


def _numbers(text: str, lineno: int, count: int | None, what: str) -> list[float]:
    values = [_parse_number(tok, lineno) for tok in text.split()]
    if count is not None and len(values) != count:
        raise FormatError(f"expected {count} {what}, found {len(values)}", lineno)
    return values


@contextmanager
def _opened(target: PathOrFile, mode: str) -> Iterator[IO[str]]:
    if hasattr(target, "read" if "r" in mode else "write"):
        yield target  # type: ignore[misc]
        return
    with open(target, mode, encoding="utf-8", newline="\n") as fh:  # type: ignore[arg-type]
        yield fh


def _read_text(source: PathOrFile) -> str:
    with _opened(source, "r") as fh:
        return fh.read()


def _write_text(destination: PathOrFile, text: str) -> None:
    with _opened(destination, "w") as fh:
        fh.write(text)


def _symmetric(n: int, rows: Sequence[Sequence[float]]) -> np.ndarray:
    pp = np.zeros((n, n))
    for r, row in enumerate(rows):
        pp[r, r + 1 :] = row
    return pp + pp.T


def _build(name, weights, profits, pair_rows, capacities, lineno=None) -> ProblemInstance:
    try:
        return ProblemInstance(name, weights, profits, _symmetric(len(weights), pair_rows), capacities)
    except StructuralError as exc:
        raise FormatError(str(exc), lineno) from None


# ---------------------------------------------------------------------------
# canonical instance format
# ---------------------------------------------------------------------------


def dumps_instance(instance: ProblemInstance) -> str:
    n = instance.n
    lines = [
        INSTANCE_MAGIC,
        f"name: {instance.name}",
        f"n: {n}",
        f"k: {instance.k}",
        f"weights: {_join(instance.weights)}",
        f"capacities: {_join(instance.capacities)}",
        f"profits: {_join(instance.profits)}",
        "pairs:",
    ]
    lines += [_join(instance.pair_profits[r, r + 1 :]) for r in range(n - 1)]
    return "\n".join(lines) + "\n"


def _field(lines: list[str], idx: int, key: str) -> str:
    lineno = idx + 1
    if idx >= len(lines):
        raise FormatError(f"missing '{key}:' line", lineno)
    head, sep, rest = lines[idx].partition(":")
    if not sep or head != key:
        raise FormatError(f"expected '{key}:' line, got {lines[idx]!r}", lineno)
    return rest.strip()


def loads_instance(text: str) -> ProblemInstance:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    lines = [ln.rstrip("\r") for ln in lines]
    if not lines or lines[0].strip() != INSTANCE_MAGIC:
        got = lines[0] if lines else ""
        raise FormatError(f"expected header {INSTANCE_MAGIC!r}, got {got!r}", 1)
    name = _field(lines, 1, "name")
    n = _parse_int(_field(lines, 2, "n"), 3, "n")
    k = _parse_int(_field(lines, 3, "k"), 4, "k")
    if n < 1:
        raise FormatError(f"n must be >= 1, got {n}", 3)
    if k < 1:
        raise FormatError(f"k must be >= 1, got {k}", 4)
    weights = _numbers(_field(lines, 4, "weights"), 5, n, "weights")
    capacities = _numbers(_field(lines, 5, "capacities"), 6, k, "capacities")
    profits = _numbers(_field(lines, 6, "profits"), 7, n, "profits")
    if _field(lines, 7, "pairs"):
        raise FormatError("'pairs:' must stand alone on its line", 8)
    rows = []
    for r in range(n - 1):
        idx = 8 + r
        if idx >= len(lines):
            raise FormatError(f"missing pair row {r + 1} of {n - 1}", idx + 1)
        rows.append(_numbers(lines[idx], idx + 1, n - 1 - r, f"pair profits in row {r + 1}"))
    extra = [i for i in range(8 + n - 1, len(lines)) if lines[i].strip()]
    if extra:
        raise FormatError("unexpected content after the pair rows", extra[0] + 1)
    return _build(name, weights, profits, rows, capacities, 2)


def save_instance(instance: ProblemInstance, destination: PathOrFile) -> None:
    _write_text(destination, dumps_instance(instance))


def load_instance(source: PathOrFile) -> ProblemInstance:
    return loads_instance(_read_text(source))


# ---------------------------------------------------------------------------
# legacy triangular import
# ---------------------------------------------------------------------------


def equal_capacity(total_weight: float, k: int, ratio: float) -> float:
    """``ceil(ratio * total_weight / k)`` evaluated exactly.

    The ratio is taken at its shortest decimal spelling (``0.8`` means 4/5,
    not the nearest double), so no rounding noise can push the result up.
    """
    exact = Fraction(repr(float(ratio))) * Fraction(total_weight) / k
    return float(math.ceil(exact))


def parse_triangular(text: str, k: int = 1, capacity_ratio: float | None = None) -> ProblemInstance:
    """Build a K-knapsack instance from a legacy quadratic single-knapsack file.

    With ``k == 1`` and no ``capacity_ratio`` the file's capacity is used as
    is.  Otherwise every knapsack gets ``ceil(ratio * sum(w) / k)`` with the
    ratio defaulting to 0.8.  A constraint-type line ``0`` between the blank
    line and the capacity, as found in the classic instance files, is
    accepted and skipped.
    """
    if int(k) != k or k < 1:
        raise ParameterError(f"k must be an integer >= 1, got {k}")
    if capacity_ratio is not None and not capacity_ratio > 0:
        raise ParameterError(f"capacity_ratio must be > 0, got {capacity_ratio}")
    lines = [ln.rstrip("\r") for ln in text.split("\n")]

    def line(idx: int, what: str) -> str:
        if idx >= len(lines) or not lines[idx].strip():
            raise FormatError(f"missing {what}", idx + 1)
        return lines[idx]

    name = "_".join(line(0, "reference name").split())
    n = _parse_int(line(1, "item count").strip(), 2, "item count")
    if n < 1:
        raise FormatError(f"item count must be >= 1, got {n}", 2)
    profits = _numbers(line(2, "linear profits"), 3, n, "linear profits")
    rows = []
    for r in range(n - 1):
        idx = 3 + r
        rows.append(_numbers(line(idx, f"pair row {r + 1}"), idx + 1, n - 1 - r, f"pair profits in row {r + 1}"))
    idx = 3 + n - 1
    if idx >= len(lines) or lines[idx].strip():
        raise FormatError("expected a blank line after the pair rows", idx + 1)
    tail = [(i, lines[i]) for i in range(idx + 1, len(lines)) if lines[i].strip()]
    if len(tail) == 3:
        ctype_idx, ctype = tail.pop(0)
        if ctype.strip() != "0":
            raise FormatError(f"unsupported constraint type {ctype.strip()!r}", ctype_idx + 1)
    if len(tail) < 2:
        at = tail[-1][0] + 2 if tail else idx + 2
        raise FormatError("expected a capacity line and a weights line", at)
    if len(tail) > 2:
        raise FormatError("unexpected content after the weights line", tail[2][0] + 1)
    (cap_idx, cap_line), (w_idx, w_line) = tail
    file_capacity = _numbers(cap_line, cap_idx + 1, 1, "capacity")[0]
    weights = _numbers(w_line, w_idx + 1, n, "weights")
    if k == 1 and capacity_ratio is None:
        capacities = [file_capacity]
    else:
        ratio = DEFAULT_CAPACITY_RATIO if capacity_ratio is None else capacity_ratio
        capacities = [equal_capacity(math.fsum(weights), k, ratio)] * k
    return _build(name or "unnamed", weights, profits, rows, capacities, 1)


def import_triangular(source: PathOrFile, k: int = 1, capacity_ratio: float | None = None) -> ProblemInstance:
    return parse_triangular(_read_text(source), k, capacity_ratio)


# ---------------------------------------------------------------------------
# solutions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SolutionFile:
    instance: str
    algorithm: str
    objective: float
    assignment: Assignment


def dumps_solution(result: SolveResult, instance: str | None = None) -> str:
    name = instance or result.instance
    if not name or any(c.isspace() for c in name):
        raise ValueError(f"solution needs an instance name without whitespace, got {name!r}")
    slots = " ".join(str(s) for s in result.assignment.slots)
    return (
        f"{SOLUTION_MAGIC}\n"
        f"instance: {name}\n"
        f"algorithm: {result.algorithm}\n"
        f"objective: {format_number(result.objective)}\n"
        f"assignment: {slots}\n"
    )


def loads_solution(text: str) -> SolutionFile:
    lines = [ln.rstrip("\r") for ln in text.split("\n")]
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0].strip() != SOLUTION_MAGIC:
        got = lines[0] if lines else ""
        raise FormatError(f"expected header {SOLUTION_MAGIC!r}, got {got!r}", 1)
    instance = _field(lines, 1, "instance")
    algorithm = _field(lines, 2, "algorithm")
    objective = _parse_number(_field(lines, 3, "objective"), 4)
    tokens = _field(lines, 4, "assignment").split()
    slots = []
    for tok in tokens:
        s = _parse_int(tok, 5, "knapsack label")
        if s < 0:
            raise FormatError(f"knapsack label must be >= 0, got {s}", 5)
        slots.append(s)
    if not slots:
        raise FormatError("empty assignment", 5)
    if any(ln.strip() for ln in lines[5:]):
        raise FormatError("unexpected content after the assignment line", 6)
    return SolutionFile(instance, algorithm, objective, Assignment(tuple(slots)))


def save_solution(result: SolveResult, destination: PathOrFile, instance: str | None = None) -> None:
    _write_text(destination, dumps_solution(result, instance))


def load_solution(source: PathOrFile) -> SolutionFile:
    return loads_solution(_read_text(source))


def parse_assignment_matrix(text: str) -> Assignment:
    """Read an N x K matrix of 0/1 entries, one item per line.

    Raises :class:`ConstraintViolationError` when a row holds more than one 1.
    """
    rows: list[tuple[int, list[int]]] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        if not raw.strip():
            continue
        row = []
        for tok in raw.split():
            if tok not in ("0", "1"):
                raise FormatError(f"matrix entries must be 0 or 1, got {tok!r}", lineno)
            row.append(int(tok))
        if rows and len(row) != len(rows[0][1]):
            raise FormatError(f"expected {len(rows[0][1])} columns, found {len(row)}", lineno)
        rows.append((lineno, row))
    if not rows:
        raise FormatError("empty assignment matrix", 1)
    for item, (lineno, row) in enumerate(rows, start=1):
        if sum(row) > 1:
            raise ConstraintViolationError(
                f"item {item} is assigned to {sum(row)} knapsacks (at most one allowed)", lineno
            )
    return Assignment.from_matrix([row for _, row in rows])


def load_assignment_matrix(source: PathOrFile) -> Assignment:
    return parse_assignment_matrix(_read_text(source))


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorConfig:
    """Settings for :func:`generate_instance`; integer ranges are inclusive."""

    n: int
    k: int
    seed: int = 0
    weight_range: tuple[int, int] = (1, 50)
    profit_range: tuple[int, int] = (1, 100)
    pair_density: float = 0.5
    pair_range: tuple[int, int] = (1, 100)
    capacity_ratio: float = DEFAULT_CAPACITY_RATIO
    name: str | None = None

    def validate(self) -> None:
        if self.n < 1 or self.k < 1:
            raise ParameterError(f"need n >= 1 and k >= 1, got n={self.n}, k={self.k}")
        for label, (lo, hi) in (
            ("weight_range", self.weight_range),
            ("profit_range", self.profit_range),
            ("pair_range", self.pair_range),
        ):
            if int(lo) != lo or int(hi) != hi or lo < 0 or lo > hi:
                raise ParameterError(f"{label} must be integers 0 <= lo <= hi, got ({lo}, {hi})")
        if not 0.0 <= self.pair_density <= 1.0:
            raise ParameterError(f"pair_density must lie in [0, 1], got {self.pair_density}")
        if not self.capacity_ratio > 0:
            raise ParameterError(f"capacity_ratio must be > 0, got {self.capacity_ratio}")
        if self.seed < 0:
            raise ParameterError(f"seed must be >= 0, got {self.seed}")


def generate_instance(config: GeneratorConfig) -> ProblemInstance:
    """Seeded random integer instance with equal knapsack capacities.

    Draw order is fixed (weights, profits, pair mask, pair values) so a
    config always reproduces the same instance.
    """
    config.validate()
    rng = np.random.default_rng(config.seed)
    n, k = config.n, config.k
    weights = rng.integers(config.weight_range[0], config.weight_range[1], size=n, endpoint=True)
    profits = rng.integers(config.profit_range[0], config.profit_range[1], size=n, endpoint=True)
    iu = np.triu_indices(n, k=1)
    present = rng.random(iu[0].size) < config.pair_density
    values = rng.integers(config.pair_range[0], config.pair_range[1], size=iu[0].size, endpoint=True)
    pp = np.zeros((n, n))
    pp[iu] = np.where(present, values, 0)
    pp = pp + pp.T
    cap = equal_capacity(float(weights.sum()), k, config.capacity_ratio)
    name = config.name or f"gen_n{n}_k{k}_s{config.seed}"
    return ProblemInstance(name, weights, profits, pp, [cap] * k)

