"""整数编码的 DFS 与混合搜索"""
import time

import pytest

from bounds.hdk import BoundContext, BoundState, hdk_descend
from const.const import BoundKind, FieldMode, Inf
from ordering.order import value_orders
from solver.brute import brute_force
from traversal.cursor import NodeCursor, descend_leftmost, skip_subtree
from traversal.dfs import DepthFirstEngine, dfs_solve
from traversal.hybrid import bfs_hybrid_solve
from traversal.incumbent import IncumbentCell
from tests.conftest import exact_table, exhaustive_minimum

MODES = [FieldMode.KEEP, FieldMode.OMIT]


def hdk_context(inst, mode, k_min=1):
    return BoundContext.build(inst, exact_table(inst, k_min, mode), mode, BoundKind.HDK)


def kh_context(inst):
    return BoundContext.build(inst, None, FieldMode.KEEP, BoundKind.KH)


class TestCursor:
    def test_skip_examples(self):
        assert skip_subtree(NodeCursor(0b000, 3, 3)) == NodeCursor(0b001, 3, 3)
        assert skip_subtree(NodeCursor(0b011, 3, 3)) == NodeCursor(0b100, 1, 3)
        assert skip_subtree(NodeCursor(0b010, 2, 3)) == NodeCursor(0b100, 1, 3)
        assert skip_subtree(NodeCursor(0b000, 1, 3)) == NodeCursor(0b100, 1, 3)
        assert skip_subtree(NodeCursor(0b100, 1, 3)) is None
        assert skip_subtree(NodeCursor.root(3)) is None

    def test_leaf_enumeration(self):
        n = 5
        leaves = []
        cursor = descend_leftmost(NodeCursor.root(n))
        while cursor is not None:
            leaves.append(cursor.x)
            cursor = skip_subtree(cursor)
            if cursor is not None:
                cursor = descend_leftmost(cursor)
        assert leaves == list(range(1 << n))

    def test_bits_and_assignment(self):
        c = NodeCursor.from_bits([1, 0], 4)
        assert c.x == 0b1000 and c.d == 2
        assert c.bits() == (1, 0)
        assert c.assignment() == (-1, 1)
        assert c.assignment([-1, 1, 1, 1]) == (1, 1)
        assert c.child(1) == NodeCursor(0b1010, 3, 4)

    def test_validation(self):
        with pytest.raises(ValueError):
            NodeCursor(0b001, 1, 3)
        with pytest.raises(ValueError):
            NodeCursor(0, 4, 3)
        with pytest.raises(IndexError):
            NodeCursor(0, 3, 3).child(0)

    def test_wide_trees(self):
        n = 100
        c = NodeCursor.from_bits([1] * n, n)
        assert skip_subtree(c) is None
        assert skip_subtree(NodeCursor(1 << 99, 1, n)) is None


class TestIncumbent:
    def test_only_improvements_accepted(self):
        cell = IncumbentCell(10, (1, 1))
        assert not cell.offer(10, (-1, -1))
        assert cell.offer(4, (1, -1))
        assert cell.snapshot() == (4, (1, -1))
        assert cell.cutoff() == 4
        assert cell.improvements == 1

    def test_empty_cell(self):
        cell = IncumbentCell()
        assert cell.energy is None
        assert cell.offer(100, (1,))
        assert cell.cutoff() == 100

    def test_kernel_leaves_shared_value_to_publish(self, random_ising):
        inst = random_ising(8, seed=7)
        ctx = hdk_context(inst, FieldMode.KEEP)
        cell = IncumbentCell()
        engine = DepthFirstEngine(ctx, value_orders(inst), cell)
        engine.publish = lambda: None
        engine.load(BoundState.root(ctx))
        while not engine.done:
            engine.step()
        optimum = exhaustive_minimum(inst)
        assert engine.best[0] == optimum
        assert cell.cutoff() == Inf
        assert cell.energy is None

        DepthFirstEngine.publish(engine)
        assert cell.snapshot()[0] == cell.cutoff() == optimum
        assert inst.raw_energy(cell.spins) == optimum


class TestExhaustiveCounts:
    @pytest.mark.parametrize("n", [2, 4, 7, 12])
    def test_dfs_without_pruning(self, random_ising, n):
        inst = random_ising(n, seed=n)
        cell = IncumbentCell()
        result = dfs_solve(kh_context(inst), cell, prune=False)
        assert result.complete
        assert result.nodes == (1 << (n + 1)) - 1
        assert result.leaves == 1 << n
        assert cell.energy == exhaustive_minimum(inst)

    @pytest.mark.parametrize("n,limit", [(6, 1), (6, 3), (6, 1000), (12, 8), (12, 10 ** 5)])
    def test_hybrid_without_pruning(self, random_ising, n, limit):
        inst = random_ising(n, seed=1)
        cell = IncumbentCell()
        result = bfs_hybrid_solve(kh_context(inst), cell, limit, prune=False)
        assert result.complete
        assert result.nodes == (1 << (n + 1)) - 1
        assert result.leaves == 1 << n
        assert cell.energy == exhaustive_minimum(inst)

    @pytest.mark.parametrize("mode", MODES)
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_skip_accounting(self, random_ising, mode, seed):
        inst = random_ising(8, seed)
        ctx = hdk_context(inst, mode)
        for result in (dfs_solve(ctx, IncumbentCell()), bfs_hybrid_solve(ctx, IncumbentCell(), 4)):
            assert result.complete
            assert result.leaves + result.skipped_leaves() == 1 << inst.n


class TestOptimum:
    @pytest.mark.parametrize("mode", MODES)
    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_dfs(self, random_ising, mode, seed):
        inst = random_ising(9, seed)
        cell = IncumbentCell()
        result = dfs_solve(hdk_context(inst, mode, k_min=2), cell)
        assert result.complete
        assert cell.energy == exhaustive_minimum(inst)
        assert inst.raw_energy(cell.spins) == cell.energy

    @pytest.mark.parametrize("mode", MODES)
    @pytest.mark.parametrize("limit", [1, 10, 1000])
    def test_hybrid(self, random_ising, mode, limit):
        inst = random_ising(9, seed=limit)
        cell = IncumbentCell()
        result = bfs_hybrid_solve(hdk_context(inst, mode), cell, limit)
        assert result.complete
        assert result.open_bound >= cell.energy
        assert cell.energy == exhaustive_minimum(inst)
        assert inst.raw_energy(cell.spins) == cell.energy

    def test_sk_kh(self, random_ising):
        inst = random_ising(10, seed=4, cls="sk")
        cell = IncumbentCell()
        dfs_solve(kh_context(inst), cell)
        assert cell.energy == exhaustive_minimum(inst)

    def test_preloaded_incumbent_never_adds_nodes(self, random_ising):
        inst = random_ising(9, seed=12)
        ctx = hdk_context(inst, FieldMode.KEEP)
        optimum = exhaustive_minimum(inst)
        cold = dfs_solve(ctx, IncumbentCell())
        warm = dfs_solve(ctx, IncumbentCell(optimum, (1,) * inst.n))
        assert warm.nodes <= cold.nodes
        assert warm.best_energy is None

    def test_subtree_from_state(self, random_ising):
        inst = random_ising(8, seed=6)
        ctx = hdk_context(inst, FieldMode.KEEP)
        first = value_orders(inst)
        best = None
        for s0 in (1, -1):
            state = hdk_descend(BoundState.root(ctx), ctx, s0)
            cell = IncumbentCell()
            dfs_solve(ctx, cell, first, state=state)
            assert cell.spins[0] == s0
            best = cell.energy if best is None else min(best, cell.energy)
        assert best == exhaustive_minimum(inst)


class TestResume:
    def test_small_budgets_match_single_run(self, random_ising):
        inst = random_ising(9, seed=3)
        ctx = hdk_context(inst, FieldMode.OMIT)
        first = value_orders(inst)
        whole = dfs_solve(ctx, IncumbentCell(), first)

        engine = DepthFirstEngine(ctx, first, IncumbentCell())
        engine.load(BoundState.root(ctx))
        calls = 0
        while not engine.done:
            engine.step(budget=3)
            calls += 1
        chunked = engine.result()
        assert calls > 1
        assert chunked.nodes + 1 == whole.nodes
        assert chunked.leaves == whole.leaves
        assert chunked.best_energy == whole.best_energy

    def test_timeout_keeps_valid_bound(self, random_ising):
        inst = random_ising(18, seed=0, density=0.5)
        optimum, _ = brute_force(inst)
        cell = IncumbentCell()
        result = dfs_solve(kh_context(inst), cell, deadline=time.monotonic() - 1.0, prune=False)
        assert not result.complete
        assert min(result.open_bound, cell.energy) <= optimum
