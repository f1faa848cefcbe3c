"""变量重排序"""
import itertools

import numpy as np
import pytest

from instance.models import IsingInstance
from ordering.order import (VariableOrder, build_order, candidate_scores, induced_subinstance, score_h1, score_h2,
                            value_order, value_orders)
from primal.anneal import AnnealSchedule

SHORT = AnnealSchedule(sweeps=10, restarts=1, seed=0)


class TestValueOrder:
    def test_sign_of_field(self):
        assert value_order(3) == (-1, 1)
        assert value_order(-2) == (1, -1)
        assert value_order(0) == (-1, 1)

    def test_vector(self):
        inst = IsingInstance(3, {}, (4, -1, 0))
        assert list(value_orders(inst)) == [-1, 1, -1]


class TestScores:
    def test_example(self):
        inst = IsingInstance(3, {(0, 1): 2, (0, 2): -1}, (1, 0, 0))
        s_star = (1, 1, -1)
        # 度数 3，E_0 = 1 + (2 + 1) = 4
        assert score_h1(inst, 0, s_star) == 7
        assert score_h2(inst, 0, s_star) == -1

    @pytest.mark.parametrize("use_h2", [False, True])
    def test_vectorised_scores_match_induced(self, random_ising, use_h2):
        inst = random_ising(7, seed=2, density=0.8)
        placed = [3, 5, 0]
        s_star = (1, -1, -1)
        s_ref = np.array([1, -1, 1, 1, -1, 1, -1])
        scores = candidate_scores(inst, placed, s_star, s_ref, use_h2)
        score = score_h2 if use_h2 else score_h1
        for c in range(inst.n):
            if c in placed:
                continue
            sub = induced_subinstance(inst, placed + [c])
            assert scores[c] == score(sub, len(placed), list(s_star) + [int(s_ref[c])])

    def test_first_step_uses_fields_only(self):
        inst = IsingInstance(3, {(0, 1): 5}, (2, -3, 0))
        scores = candidate_scores(inst, [], (), (1, 1, 1), False)
        assert list(scores) == [2, 3, 0]


class TestVariableOrder:
    def test_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            VariableOrder((0, 0, 1))

    def test_mapping(self):
        inst = IsingInstance(3, {(0, 1): 2, (1, 2): -3}, (1, 0, -1))
        order = VariableOrder((2, 0, 1))
        work = order.apply(inst)
        assert order.to_list() == [3, 1, 2]
        for s in itertools.product((-1, 1), repeat=3):
            assert work.raw_energy(s) == inst.raw_energy(order.pull_back(s))
            assert order.push_forward(order.pull_back(s)) == s

    def test_identity(self):
        assert VariableOrder.identity(4).perm == (0, 1, 2, 3)


class TestBuildOrder:
    def test_hub_goes_to_the_top(self):
        # 星形图，中心为变量 2
        inst = IsingInstance(6, {(min(2, j), max(2, j)): 1 for j in (0, 1, 3, 4, 5)}, (0,) * 6)
        order = build_order(inst, 0, SHORT)
        assert order.perm.index(2) <= 2

    def test_is_permutation_and_deterministic(self, random_ising):
        inst = random_ising(9, seed=7)
        a = build_order(inst, 2, SHORT)
        b = build_order(inst, 2, SHORT)
        assert sorted(a.perm) == list(range(9))
        assert a == b

    def test_tiny_instance(self):
        assert build_order(IsingInstance(1, {}, (3,)), 0, SHORT).perm == (0,)
