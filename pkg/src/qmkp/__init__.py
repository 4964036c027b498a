"""Solver toolkit and benchmark harness for the quadratic multiple knapsack problem."""

from .core import (
    UNASSIGNED,
    Assignment,
    FeasibilityReport,
    ProblemInstance,
    SolveResult,
    check_feasibility,
    knapsack_load,
    profit_delta_add,
    total_profit,
)
from .errors import (
    ConstraintViolationError,
    ContractError,
    FormatError,
    InstanceTooLargeError,
    ParameterError,
    QMKPError,
    StructuralError,
)

__version__ = "0.1.0"
