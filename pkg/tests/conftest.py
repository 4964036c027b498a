import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qmkp import ProblemInstance  # noqa: E402

T1_PAIRS = [
    [0, 1, 2, 0],
    [1, 0, 1, 3],
    [2, 1, 0, 1],
    [0, 3, 1, 0],
]

T1_TEXT = """QMKP 1
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
"""

LEGACY_PAIR_TEXT = """pair2
2
1 1
5

10
1 1
"""


def make_t1() -> ProblemInstance:
    return ProblemInstance("t1", [2, 3, 4, 5], [1, 2, 3, 4], T1_PAIRS, [5, 7])


def make_pair(name="pair2") -> ProblemInstance:
    return ProblemInstance(name, [1, 1], [1, 1], [[0, 5], [5, 0]], [10])


def as_lists(instance):
    return (
        instance.weights.tolist(),
        instance.profits.tolist(),
        instance.pair_profits.tolist(),
        instance.capacities.tolist(),
    )


@pytest.fixture
def t1():
    return make_t1()


@pytest.fixture
def pair_instance():
    return make_pair()


@pytest.fixture
def t1_file(tmp_path):
    path = tmp_path / "t1.qmkp"
    path.write_text(T1_TEXT)
    return path


def zero_profit(instance):
    return instance.replace(profits=np.zeros(instance.n), pair_profits=np.zeros((instance.n, instance.n)))


ACCEPTANCE_LINES: list[str] = []


def record_criterion(label: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
