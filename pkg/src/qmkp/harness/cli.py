"""Command line interface.

Exit codes: 0 success, 1 a checked solution is infeasible or its objective
is wrong (``check``) or a conformance check failed, 2 bad parameters or
unreadable input, 3 a built-in solver produced an infeasible result.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from ..algorithms import registry_get, registry_list
from ..core import check_feasibility, objectives_match, total_profit
from ..errors import QMKPError
from ..io import (
    GeneratorConfig,
    format_number,
    generate_instance,
    import_triangular,
    load_instance,
    load_solution,
    save_instance,
    save_solution,
)
from .bench import find_instances, run_bench, write_csv
from .conformance import conformance_suite

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3


class UsageError(Exception):
    pass


def _error(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _parse_params(pairs: Sequence[str] | None) -> dict[str, str]:
    out = {}
    for item in pairs or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"parameter must look like key=value, got {item!r}")
        out[key] = value
    return out


def _bench_params(pairs: Sequence[str] | None) -> dict[str, dict[str, str]]:
    out: dict[str, dict[str, str]] = {}
    for item in pairs or []:
        target, sep, rest = item.partition(".")
        if not sep:
            raise UsageError(f"bench parameter must look like algorithm.key=value, got {item!r}")
        out.setdefault(target, {}).update(_parse_params([rest]))
    return out


def _algorithm(name: str):
    try:
        return registry_get(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def cmd_solve(args: argparse.Namespace) -> int:
    spec = _algorithm(args.algorithm)
    instance = load_instance(args.instance)
    result = spec.run(instance, _parse_params(args.param), seed=args.seed)
    report = check_feasibility(instance, result.assignment)
    save_solution(result, args.out)
    print(
        f"objective={format_number(result.objective)} "
        f"feasible={'true' if report.feasible else 'false'} "
        f"runtime_ms={result.runtime_ms:.3f}"
    )
    if not report.feasible:
        _error(f"{spec.name} returned an infeasible solution\n{report.summary()}")
        return EXIT_INFEASIBLE
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    solution = load_solution(args.solution)
    if solution.instance != instance.name:
        print(f"warning: solution is for {solution.instance!r}, instance is {instance.name!r}", file=sys.stderr)
    report = check_feasibility(instance, solution.assignment)
    objective = total_profit(instance, solution.assignment)
    matches = objectives_match(solution.objective, objective, instance.is_integral)
    print(report.summary())
    print(f"objective={format_number(objective)} stored={format_number(solution.objective)} "
          f"match={'true' if matches else 'false'}")
    return EXIT_OK if report.feasible and matches else EXIT_FAILED


def cmd_bench(args: argparse.Namespace) -> int:
    paths = find_instances(args.instances_dir)
    if not paths:
        raise UsageError(f"no instances found in {args.instances_dir}")
    algorithms = [a for a in args.algorithms.split(",") if a]
    if not algorithms:
        raise UsageError("no algorithms given")
    for name in algorithms:
        _algorithm(name)
    if args.repeats < 1:
        raise UsageError("--repeats must be >= 1")
    if args.base_seed < 0:
        raise UsageError("--base-seed must be >= 0")
    instances = [load_instance(p) for p in paths]
    records = run_bench(instances, algorithms, args.repeats, args.base_seed, _bench_params(args.param), args.jobs)
    write_csv(records, args.out)
    bad = [r for r in records if not r.feasible]
    print(f"wrote {len(records)} rows to {args.out}")
    if bad:
        for r in bad:
            _error(f"{r.algorithm} on {r.instance} (repeat {r.repeat}) returned an infeasible solution")
        return EXIT_INFEASIBLE
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    config = GeneratorConfig(
        n=args.n,
        k=args.k,
        seed=args.seed,
        weight_range=(args.w_min, args.w_max),
        profit_range=(args.p_min, args.p_max),
        pair_density=args.pair_density,
        pair_range=(args.q_min, args.q_max),
        capacity_ratio=args.capacity_ratio,
        name=args.name,
    )
    save_instance(generate_instance(config), args.out)
    return EXIT_OK


def cmd_convert(args: argparse.Namespace) -> int:
    save_instance(import_triangular(args.legacy, args.k, args.ratio), args.out)
    return EXIT_OK


def cmd_conformance(args: argparse.Namespace) -> int:
    report = conformance_suite(_algorithm(args.solver), seed=args.seed)
    print(report.format())
    return EXIT_OK if report.passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    names = ", ".join(spec.name for spec in registry_list())
    parser = argparse.ArgumentParser(prog="qmkp", description="Quadratic multiple knapsack solvers and benchmarks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance and write a .qmkp-sol file")
    p.add_argument("instance")
    p.add_argument("-a", "--algorithm", required=True, help=f"one of: {names}")
    p.add_argument("-p", "--param", action="append", metavar="KEY=VALUE", help="solver parameter (repeatable)")
    p.add_argument("--seed", type=int, default=0, help="seed for randomised solvers (default 0)")
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="verify a solution file against its instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser(
        "bench",
        help="run algorithms over a directory of .qmkp files",
        description="Repeat r of every cell runs with seed BASE_SEED + r. "
        "runtime_ms is wall-clock time and is not reproducible.",
    )
    p.add_argument("instances_dir")
    p.add_argument("-a", "--algorithms", required=True, help="comma-separated solver names")
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--base-seed", type=int, default=0)
    p.add_argument("-p", "--param", action="append", metavar="ALGO.KEY=VALUE")
    p.add_argument("-j", "--jobs", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="write a seeded random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--w-min", type=int, default=1)
    p.add_argument("--w-max", type=int, default=50)
    p.add_argument("--p-min", type=int, default=1)
    p.add_argument("--p-max", type=int, default=100)
    p.add_argument("--pair-density", type=float, default=0.5)
    p.add_argument("--q-min", type=int, default=1)
    p.add_argument("--q-max", type=int, default=100)
    p.add_argument("--capacity-ratio", type=float, default=0.8)
    p.add_argument("--name")
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("convert", help="import a legacy triangular quadratic-knapsack file")
    p.add_argument("legacy")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--ratio", type=float, default=None,
                   help="capacity as a fraction of total weight (default 0.8; file capacity when k=1 and unset)")
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("conformance", help="run the generic solver test battery")
    p.add_argument("solver")
    p.add_argument("--seed", type=int, default=2022)
    p.set_defaults(func=cmd_conformance)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, QMKPError, OSError) as exc:
        _error(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
