import io
import math
from decimal import Decimal

import numpy as np
import pytest

from qmkp import Assignment, ConstraintViolationError, FormatError, ParameterError, ProblemInstance
from qmkp.algorithms import solve_exact
from qmkp.io import (
    GeneratorConfig,
    dumps_instance,
    dumps_solution,
    format_number,
    generate_instance,
    import_triangular,
    load_instance,
    load_solution,
    loads_instance,
    loads_solution,
    parse_assignment_matrix,
    parse_triangular,
    save_instance,
    save_solution,
)
from conftest import LEGACY_PAIR_TEXT, T1_TEXT, make_pair


class TestCanonicalFormat:
    def test_t1_parses(self, t1):
        inst = loads_instance(T1_TEXT)
        assert inst == t1
        assert inst.pair_profits[1, 3] == 3
        assert np.all(np.diag(inst.pair_profits) == 0)

    def test_t1_renders_identically(self, t1):
        assert dumps_instance(t1) == T1_TEXT

    def test_file_round_trip_is_byte_identical(self, t1_file, tmp_path):
        again = tmp_path / "again.qmkp"
        save_instance(load_instance(t1_file), again)
        assert again.read_bytes() == t1_file.read_bytes()

    def test_streams(self, t1):
        buf = io.StringIO()
        save_instance(t1, buf)
        assert load_instance(io.StringIO(buf.getvalue())) == t1

    def test_real_values_round_trip(self):
        inst = ProblemInstance("r", [0.1, 1e-7], [1 / 3, 2.5], [[0, math.pi], [math.pi, 0]], [1e20])
        text = dumps_instance(inst)
        numeric = [ln.split(":")[-1] for ln in text.splitlines()[4:]]
        assert not any("e" in part for part in numeric)
        assert loads_instance(text) == inst
        assert dumps_instance(loads_instance(text)) == text

    @pytest.mark.parametrize(
        "x, text", [(3.0, "3"), (0.5, "0.5"), (1e-5, "0.00001"), (-0.0, "0"), (0.1 + 0.2, "0.30000000000000004")]
    )
    def test_format_number(self, x, text):
        assert format_number(x) == text

    @pytest.mark.parametrize(
        "old, new, line",
        [
            ("QMKP 1", "QMKP 2", 1),
            ("weights: 2 3 4 5", "weights: 2 3 4", 5),
            ("weights: 2 3 4 5", "weights: 2 3 4 5 6", 5),
            ("capacities: 5 7", "capacities: 5 -7", 6),
            ("profits: 1 2 3 4", "profits: 1 2 inf 4", 7),
            ("profits: 1 2 3 4", "profits: 1 2 x 4", 7),
            ("n: 4", "n: four", 3),
            ("k: 2", "k: 0", 4),
            ("1 3\n", "1\n", 10),
            ("name: t1", "name t1", 2),
        ],
    )
    def test_malformed(self, old, new, line):
        with pytest.raises(FormatError) as err:
            loads_instance(T1_TEXT.replace(old, new, 1))
        assert err.value.line == line
        assert f"line {line}" in str(err.value)

    def test_three_weights_for_two_items(self):
        text = "QMKP 1\nname: x\nn: 2\nk: 1\nweights: 1 2 3\ncapacities: 1\nprofits: 1 1\npairs:\n0\n"
        with pytest.raises(FormatError, match="line 5"):
            loads_instance(text)

    def test_truncated_pairs(self):
        with pytest.raises(FormatError, match="line 11"):
            loads_instance(T1_TEXT.rsplit("1\n", 1)[0])

    def test_trailing_garbage(self):
        with pytest.raises(FormatError, match="line 12"):
            loads_instance(T1_TEXT + "9\n")

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_instance(tmp_path / "nope.qmkp")


class TestTriangularImport:
    def test_single_knapsack_uses_file_capacity(self):
        inst = parse_triangular(LEGACY_PAIR_TEXT, k=1)
        assert inst == make_pair()

    def test_equal_capacities(self):
        inst = parse_triangular(LEGACY_PAIR_TEXT, k=2, capacity_ratio=0.8)
        assert inst.capacities.tolist() == [1, 1]

    def test_default_ratio_when_k_above_one(self):
        assert parse_triangular(LEGACY_PAIR_TEXT, k=2).capacities.tolist() == [1, 1]

    def test_ratio_with_single_knapsack(self):
        assert parse_triangular(LEGACY_PAIR_TEXT, k=1, capacity_ratio=0.5).capacities.tolist() == [1]

    def test_constraint_type_line(self):
        text = "r_4_100_1\n4\n1 2 3 4\n1 2 0\n1 3\n1\n\n0\n7\n2 3 4 5\n"
        inst = parse_triangular(text)
        assert inst.name == "r_4_100_1"
        assert inst.capacities.tolist() == [7]
        assert inst.pair_profits.tolist() == [[0, 1, 2, 0], [1, 0, 1, 3], [2, 1, 0, 1], [0, 3, 1, 0]]

    def test_ratio_is_decimal_exact(self):
        # 0.8 * 15 is 12.000000000000002 in binary floating point
        text = "w15\n3\n1 1 1\n0 0\n0\n\n15\n5 5 5\n"
        assert parse_triangular(text, k=1, capacity_ratio=0.8).capacities.tolist() == [12]

    @pytest.mark.parametrize(
        "text, line",
        [
            ("pair2\n2\n1 1\n", 4),
            ("x\n3\n1 1 1\n5 5\n\n10\n1 1 1\n", 5),
            ("pair2\n2\n1 1\n5\n\n10\n", 7),
            ("pair2\n2\n1 1\n5 6\n\n10\n1 1\n", 4),
            ("pair2\ntwo\n", 2),
        ],
    )
    def test_malformed(self, text, line):
        with pytest.raises(FormatError) as err:
            parse_triangular(text)
        assert err.value.line == line

    def test_bad_k(self):
        with pytest.raises(ParameterError):
            parse_triangular(LEGACY_PAIR_TEXT, k=0)

    def test_from_file(self, tmp_path):
        path = tmp_path / "legacy.txt"
        path.write_text(LEGACY_PAIR_TEXT)
        assert import_triangular(path) == make_pair()

    def test_symmetric_zero_diagonal(self):
        for n in range(1, 7):
            rng = np.random.default_rng(n)
            rows = [" ".join(str(v) for v in rng.integers(0, 9, size=n - 1 - r)) for r in range(n - 1)]
            text = "\n".join(["f", str(n), " ".join(["1"] * n), *rows, "", "9", " ".join(["2"] * n)]) + "\n"
            pp = parse_triangular(text, k=3).pair_profits
            assert np.array_equal(pp, pp.T) and not np.any(np.diag(pp))


class TestSolutions:
    def test_exact_t1_round_trip(self, t1, tmp_path):
        path = tmp_path / "t1.qmkp-sol"
        save_solution(solve_exact(t1), path)
        assert path.read_text() == (
            "QMKP-SOL 1\ninstance: t1\nalgorithm: exact\nobjective: 10\nassignment: 0 2 2 1\n"
        )
        sol = load_solution(path)
        assert sol.assignment.slots == (0, 2, 2, 1)
        assert sol.objective == 10 and sol.instance == "t1" and sol.algorithm == "exact"

    def test_real_objective_round_trip(self, t1):
        r = solve_exact(t1.replace(profits=[0.1, 0.2, 1 / 3, 4]))
        assert loads_solution(dumps_solution(r)).objective == r.objective

    @pytest.mark.parametrize(
        "text, line",
        [
            ("QMKP 1\n", 1),
            ("QMKP-SOL 1\ninstance: t1\nalgorithm: x\nobjective: -1\nassignment: 0\n", 4),
            ("QMKP-SOL 1\ninstance: t1\nalgorithm: x\nobjective: 1\nassignment: 0 -1\n", 5),
            ("QMKP-SOL 1\ninstance: t1\nalgorithm: x\nobjective: 1\nassignment: 0 a\n", 5),
            ("QMKP-SOL 1\ninstance: t1\nalgorithm: x\nobjective: 1\n", 5),
        ],
    )
    def test_malformed(self, text, line):
        with pytest.raises(FormatError) as err:
            loads_solution(text)
        assert err.value.line == line


class TestAssignmentMatrix:
    def test_two_knapsacks_rejected(self):
        with pytest.raises(ConstraintViolationError, match="item 1"):
            parse_assignment_matrix("1 1\n0 0\n0 1\n1 0\n")

    def test_all_zero(self):
        assert parse_assignment_matrix("0 0\n0 0\n0 0\n") == Assignment.empty(3)

    def test_converts(self):
        assert parse_assignment_matrix("0 0\n0 1\n0 1\n1 0\n").slots == (0, 2, 2, 1)

    def test_ragged(self):
        with pytest.raises(FormatError, match="line 2"):
            parse_assignment_matrix("0 0\n0\n")

    def test_non_binary(self):
        with pytest.raises(FormatError):
            parse_assignment_matrix("0 2\n")


def ceil_oracle(ratio, total, k):
    q = Decimal(repr(ratio)) * Decimal(int(total)) / Decimal(k)
    return int(q.to_integral_value(rounding="ROUND_CEILING"))


class TestGenerator:
    def test_repeatable(self):
        cfg = GeneratorConfig(n=5, k=2, seed=42)
        assert generate_instance(cfg) == generate_instance(cfg)
        assert dumps_instance(generate_instance(cfg)) == dumps_instance(generate_instance(cfg))

    def test_seeds_differ(self):
        assert generate_instance(GeneratorConfig(8, 2, seed=1)) != generate_instance(
            GeneratorConfig(8, 2, seed=2, name="gen_n8_k2_s1")
        )

    def test_no_pairs(self):
        inst = generate_instance(GeneratorConfig(n=6, k=2, pair_density=0.0))
        assert not inst.pair_profits.any()

    def test_dense_unit_pairs(self):
        inst = generate_instance(GeneratorConfig(n=6, k=2, pair_density=1.0, pair_range=(1, 1)))
        assert np.array_equal(inst.pair_profits, np.ones((6, 6)) - np.eye(6))

    def test_ranges(self):
        inst = generate_instance(GeneratorConfig(n=50, k=3, weight_range=(3, 4), profit_range=(7, 7)))
        assert set(inst.weights.tolist()) <= {3, 4}
        assert set(inst.profits.tolist()) == {7}

    def test_capacity_formula(self):
        for seed in range(30):
            cfg = GeneratorConfig(n=1 + seed % 9, k=1 + seed % 4, seed=seed, capacity_ratio=[0.8, 0.3, 1.1][seed % 3])
            inst = generate_instance(cfg)
            expected = ceil_oracle(cfg.capacity_ratio, inst.weights.sum(), cfg.k)
            assert inst.capacities.tolist() == [expected] * cfg.k

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(n=0),
            dict(k=0),
            dict(weight_range=(5, 4)),
            dict(pair_density=1.5),
            dict(capacity_ratio=0),
            dict(seed=-3),
        ],
    )
    def test_invalid(self, kwargs):
        base = dict(n=3, k=2)
        base.update(kwargs)
        with pytest.raises(ParameterError):
            generate_instance(GeneratorConfig(**base))


def test_round_trip_identity_on_generated():
    for seed in range(100):
        inst = generate_instance(GeneratorConfig(n=1 + seed % 25, k=1 + seed % 5, seed=seed, pair_density=0.3))
        text = dumps_instance(inst)
        back = loads_instance(text)
        assert back == inst
        assert dumps_instance(back) == text
