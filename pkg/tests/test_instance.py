"""实例解析、转换与生成"""
import itertools
from fractions import Fraction

import numpy as np
import pytest

from const.const import ProblemKind, Sense
from instance.errors import (AssignmentError, DuplicateEntryError, EntryCountError, GeneratorError, HeaderError,
                             IndexRangeError, OverflowGuardError, ValueFormatError)
from instance.generator import generate_random
from instance.models import Assignment, IsingInstance, MaxCutInstance, QuboInstance
from instance.parser import format_instance, parse_instance, to_ising


QUBO_TEXT = """# small qubo
3 5
1 1 -3
1 2 2
2 2 1.5
2 3 -4
3 3 1
"""


class TestParser:
    def test_qubo_entries(self):
        q = parse_instance(QUBO_TEXT, "qubo")
        assert isinstance(q, QuboInstance)
        assert q.n == 3
        assert len(q.entries) == 5
        # x = (1, 1, 1): -3 + 2 + 1.5 - 4 + 1
        assert q.objective((1, 1, 1)) == Fraction(-5, 2)
        assert q.objective((1, 0, 0)) == -3

    def test_lower_triangle_entries_are_normalised(self):
        q = parse_instance("2 1\n2 1 7\n", "qubo")
        assert q.entries == ((1, 2, 7),)

    def test_missing_header(self):
        with pytest.raises(HeaderError):
            parse_instance("# only comments\n", "qubo")

    def test_malformed_header_reports_line(self):
        with pytest.raises(HeaderError) as info:
            parse_instance("# c\nthree 2\n", "qubo")
        assert info.value.line == 2

    def test_index_out_of_range(self):
        with pytest.raises(IndexRangeError) as info:
            parse_instance("2 1\n1 3 5\n", "qubo")
        assert info.value.line == 2

    def test_duplicate_entry(self):
        with pytest.raises(DuplicateEntryError) as info:
            parse_instance("2 2\n1 2 1\n2 1 1\n", "qubo")
        assert info.value.line == 3

    def test_too_few_entries(self):
        with pytest.raises(EntryCountError):
            parse_instance("2 2\n1 2 1\n", "qubo")

    def test_too_many_entries(self):
        with pytest.raises(EntryCountError) as info:
            parse_instance("2 1\n1 2 1\n1 1 1\n", "qubo")
        assert info.value.line == 3

    def test_bad_value(self):
        with pytest.raises(ValueFormatError) as info:
            parse_instance("2 1\n1 2 abc\n", "qubo")
        assert info.value.line == 2

    def test_maxcut_self_loop(self):
        with pytest.raises(IndexRangeError):
            parse_instance("2 1\n1 1 4\n", "maxcut")

    def test_ising_offset_and_fields(self):
        inst = parse_instance("# offset 1.5\n3 3\n1 2 0.5\n2 3 -1\n1 1 2\n", "ising")
        assert inst.scale == 2
        assert inst.couplings == {(0, 1): 1, (1, 2): -2}
        assert inst.fields == (4, 0, 0)
        assert inst.offset == 3
        # 0.5 - 1 + 2 + 1.5
        assert inst.energy((1, 1, 1)) == 3

    def test_format_then_parse_keeps_ising_instance(self):
        inst = parse_instance("# offset 1.5\n3 3\n1 2 0.5\n2 3 -1\n1 1 2\n", "ising")
        again = parse_instance(format_instance(inst), "ising")
        assert again == inst

    @pytest.mark.parametrize("cls,n", [("uniform", 12), ("sk", 15), ("grid2d", 16), ("grid3d", 27)])
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_generated_instances_survive_printing(self, cls, n, seed):
        inst = generate_random(n, cls, 0.6, seed)
        again = parse_instance(format_instance(inst), "ising")
        assert (again.n, again.couplings, again.fields) == (inst.n, inst.couplings, inst.fields)
        assert (again.offset, again.scale, again.sense) == (0, 1, Sense.MIN)
        rng = np.random.default_rng(seed)
        for _ in range(5):
            spins = tuple(int(s) for s in rng.choice([-1, 1], size=n))
            assert again.objective(spins) == inst.objective(spins)


class TestConversion:
    def test_qubo_objective_preserved(self):
        q = parse_instance(QUBO_TEXT, "qubo")
        ising = to_ising(q)
        assert ising.kind is ProblemKind.QUBO
        for x in itertools.product((0, 1), repeat=q.n):
            s = tuple(1 - 2 * b for b in x)
            assert ising.objective(s) == q.objective(x)

    def test_qubo_max_sense_is_minimised_internally(self):
        q = parse_instance(QUBO_TEXT, "qubo", "max")
        ising = to_ising(q)
        for x in itertools.product((0, 1), repeat=q.n):
            s = tuple(1 - 2 * b for b in x)
            assert ising.objective(s) == q.objective(x)
            assert ising.energy(s) == -q.objective(x)

    def test_maxcut_objective_is_cut_value(self):
        g = MaxCutInstance(3, ((1, 2, 1), (1, 3, 2), (2, 3, 3)))
        ising = to_ising(g)
        assert ising.fields == (0, 0, 0)
        assert ising.objective((1, -1, -1)) == 3
        for s in itertools.product((-1, 1), repeat=3):
            assert ising.objective(s) == g.cut_value(s)

    def test_maxcut_fractional_weights(self):
        g = parse_instance("3 2\n1 2 0.25\n2 3 1\n", "maxcut", "max")
        ising = to_ising(g)
        for s in itertools.product((-1, 1), repeat=3):
            assert ising.objective(s) == g.cut_value(s)

    def test_ising_max_sense(self):
        inst = parse_instance("2 2\n1 2 3\n2 2 -1\n", "ising", "max")
        for s in itertools.product((-1, 1), repeat=2):
            assert inst.objective(s) == 3 * s[0] * s[1] - s[1]

    def test_subproblem_and_permute(self):
        inst = IsingInstance(3, {(0, 1): 2, (1, 2): -3}, (1, 0, -1))
        tail = inst.subproblem(1)
        assert tail.couplings == {(0, 1): -3}
        assert tail.fields == (0, -1)
        assert inst.subproblem(1, keep_fields=False).fields == (0, 0)
        moved = inst.permute((2, 0, 1))
        assert moved.couplings == {(1, 2): 2, (0, 2): -3}
        assert moved.fields == (-1, 1, 0)


class TestModels:
    def test_assignment_views(self):
        a = Assignment((1, -1, -1))
        assert a.binary == (0, 1, 1)
        assert Assignment.from_binary((0, 1, 1)) == a

    def test_assignment_rejects_zero(self):
        with pytest.raises(AssignmentError):
            Assignment((1, 0))

    def test_energy_rejects_wrong_length(self):
        inst = IsingInstance(2, {(0, 1): 1}, (0, 0))
        with pytest.raises(AssignmentError):
            inst.energy((1,))

    def test_overflow_guard(self):
        with pytest.raises(OverflowGuardError):
            IsingInstance(2, {(0, 1): 1 << 62}, (1, 0))

    def test_sense_defaults(self):
        assert QuboInstance(1, ((1, 1, 1),)).sense is Sense.MIN
        assert MaxCutInstance(2, ((1, 2, 1),)).sense is Sense.MAX


class TestGenerator:
    def test_same_seed_same_instance(self):
        assert generate_random(8, "sk", seed=3) == generate_random(8, "sk", seed=3)
        assert generate_random(8, "sk", seed=3) != generate_random(8, "sk", seed=4)

    def test_sk_is_complete_pm_one(self):
        inst = generate_random(6, "sk", seed=0)
        assert len(inst.couplings) == 15
        assert set(inst.couplings.values()) <= {-1, 1}
        assert inst.fields == (0,) * 6

    def test_uniform_coefficients_nonzero(self):
        inst = generate_random(10, "uniform", 1.0, seed=1)
        assert len(inst.couplings) == 45
        assert all(v != 0 and -100 < v < 100 for v in inst.couplings.values())
        assert all(v != 0 for v in inst.fields)

    def test_lattices(self):
        assert len(generate_random(9, "grid2d", seed=0).couplings) == 12
        assert len(generate_random(8, "grid3d", seed=0).couplings) == 12
        with pytest.raises(GeneratorError):
            generate_random(10, "grid2d")

    def test_bad_arguments(self):
        with pytest.raises(GeneratorError):
            generate_random(5, "torus")
        with pytest.raises(GeneratorError):
            generate_random(5, "uniform", density=0.0)
