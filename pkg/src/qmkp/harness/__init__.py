"""Benchmark runner, conformance battery and command line entry point."""

from .bench import BenchRecord, canonical_params, render_csv, run_bench, run_cell, write_csv
from .conformance import CheckResult, ConformanceReport, conformance_suite

__all__ = [
    "BenchRecord",
    "CheckResult",
    "ConformanceReport",
    "canonical_params",
    "conformance_suite",
    "render_csv",
    "run_bench",
    "run_cell",
    "write_csv",
]
