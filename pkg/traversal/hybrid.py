"""
混合搜索：最优优先展开前沿，前沿超过上限时弹出最好的节点用 DFS 搜完它的子树。

前沿按 (bound, -depth, x) 排序，同界时优先更深的节点。
"""
import heapq
import itertools
import time
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

from bounds.hdk import BoundContext, BoundState, hdk_descend
from const.const import Inf
from ordering.order import value_orders
from traversal.cursor import NodeCursor
from traversal.dfs import DepthFirstEngine, SearchResult
from traversal.incumbent import IncumbentCell
from utils.logger import Logger

logger = Logger.get_logger()


@dataclass
class FrontierEntry:
    """前沿节点"""

    cursor: NodeCursor  # 节点编码
    state: BoundState  # 界状态的完整拷贝
    bound: int  # 优先级

    def key(self) -> Tuple[int, int, int]:
        return self.bound, -self.cursor.d, self.cursor.x


class HybridEngine:
    """BFS/DFS 混合搜索"""

    def __init__(self, ctx: BoundContext, first: np.ndarray, cell: IncumbentCell, frontier_limit: int,
                 prune: bool = True, progress: Optional[Callable[[int, int], None]] = None):
        """
        Args:
            ctx: 搜索上下文
            first: 每个变量的第一个取值
            cell: 共享现任解
            frontier_limit: 前沿节点上限 (>= 1)
            prune: 是否剪枝
            progress: 进度回调 (未搜索部分的下界, 已计算节点数)
        """
        if frontier_limit < 1:
            raise ValueError(f"frontier_limit must be at least 1, got {frontier_limit}")
        self.ctx: BoundContext = ctx  # 搜索上下文
        self.first: np.ndarray = np.asarray(first, dtype=np.int64)  # 取值顺序
        self.cell: IncumbentCell = cell  # 共享现任解
        self.frontier_limit: int = frontier_limit  # 前沿上限
        self.prune: bool = prune  # 是否剪枝
        self.dfs: DepthFirstEngine = DepthFirstEngine(ctx, self.first, cell, prune)  # DFS 分支复用的引擎
        self.frontier: List[Tuple[int, int, int, int, FrontierEntry]] = []  # 堆
        self.result: SearchResult = SearchResult(ctx.n)  # 前沿部分的统计
        self.excursions: int = 0  # DFS 分支次数
        self.peak: int = 0  # 前沿最大规模
        self.progress: Optional[Callable[[int, int], None]] = progress  # 进度回调
        self._counter = itertools.count()

    def push(self, entry: FrontierEntry):
        heapq.heappush(self.frontier, (*entry.key(), next(self._counter), entry))
        self.peak = max(self.peak, len(self.frontier))

    def pop(self) -> FrontierEntry:
        return heapq.heappop(self.frontier)[-1]

    def frontier_bound(self) -> int:
        """前沿最小界 (前沿为空时为 Inf)"""
        return self.frontier[0][0] if self.frontier else Inf

    def _pruned(self, entry: FrontierEntry) -> bool:
        if self.prune and entry.bound >= self.cell.cutoff():
            self.result.pruned_at[entry.cursor.d] += 1
            return True
        return False

    def _leaf(self, state: BoundState):
        """叶子：界就是精确能量"""
        self.result.leaves += 1
        energy = state.partial_energy
        if self.result.best_energy is None or energy < self.result.best_energy:
            self.result.best_energy = energy
            self.result.best_spins = tuple(int(s) for s in state.spins)
            self.result.improvements += 1
            self.cell.offer(energy, state.spins)

    def _expand(self, entry: FrontierEntry):
        """计算两个子节点的界，未被剪枝的进入前沿"""
        d = entry.cursor.d
        for bit, s in ((0, int(self.first[d])), (1, -int(self.first[d]))):
            child = hdk_descend(entry.state.copy(), self.ctx, s)
            self.result.nodes += 1
            node = FrontierEntry(entry.cursor.child(bit), child, child.bound)
            if self._pruned(node):
                continue
            if child.depth == self.ctx.n:
                self._leaf(child)
            else:
                self.push(node)

    def nodes(self) -> int:
        """前沿与 DFS 分支已计算的节点数"""
        return self.result.nodes + int(self.dfs.stats[0])

    def report(self, open_bound: int):
        if self.progress is not None:
            self.progress(open_bound, self.nodes())

    def _report_excursion(self):
        # DFS 分支未完成的部分 + 仍在前沿上的节点
        self.report(min(self.dfs.open_bound(), self.frontier_bound()))

    def _excursion(self, entry: FrontierEntry, deadline: Optional[float]) -> bool:
        """用 DFS 搜完 entry 的子树，返回是否完成"""
        self.excursions += 1
        self.dfs.load(entry.state)
        return self.dfs.run(deadline, self._report_excursion if self.progress is not None else None)

    def solve(self, state: BoundState, cursor: NodeCursor, deadline: Optional[float] = None) -> SearchResult:
        """
        搜索以 state 为根的子树 (根节点的界已计入调用方的节点数)

        Args:
            state: 子树根
            cursor: 子树根的编码
            deadline: 截止时间

        Returns:
            SearchResult: 前沿与 DFS 分支的合并结果
        """
        root = FrontierEntry(cursor, state, state.bound)
        open_bound = Inf
        complete = True
        if not self._pruned(root):
            if state.depth == self.ctx.n:
                self._leaf(state)
            else:
                self.push(root)

        while self.frontier:
            self.report(self.frontier_bound())
            if deadline is not None and time.monotonic() >= deadline:
                complete = False
                break
            entry = self.pop()
            if self._pruned(entry):
                continue
            if len(self.frontier) + 1 > self.frontier_limit:
                if not self._excursion(entry, deadline):
                    complete = False
                    open_bound = self.dfs.open_bound()
                    break
            else:
                self._expand(entry)

        result = self.result
        result.open_bound = min(open_bound, self.frontier_bound())
        result.complete = complete
        logger.debug(f"Hybrid search: {result.nodes} frontier nodes, {self.excursions} DFS excursions, "
                     f"peak frontier {self.peak}")
        self.report(result.open_bound)
        return self._combined(result)

    def _combined(self, frontier: SearchResult) -> SearchResult:
        """前沿统计 + DFS 分支统计"""
        excursion = self.dfs.result()
        excursion.open_bound = Inf
        excursion.complete = True
        return frontier.merge(excursion)


def bfs_hybrid_solve(ctx: BoundContext, cell: IncumbentCell, frontier_limit: int, first: Optional[np.ndarray] = None,
                     deadline: Optional[float] = None, state: Optional[BoundState] = None,
                     prune: bool = True, progress: Optional[Callable[[int, int], None]] = None) -> SearchResult:
    """
    混合搜索求解 (子) 树

    Args:
        ctx: 搜索上下文
        cell: 现任解
        frontier_limit: 前沿上限
        first: 取值顺序，默认按局部场符号
        deadline: 截止时间
        state: 子树根，默认为整棵树的根 (此时根节点计入节点数)
        prune: 是否剪枝
        progress: 进度回调 (未搜索部分的下界, 已计算节点数)

    Returns:
        SearchResult
    """
    if first is None:
        first = value_orders(ctx.inst)
    counted = 0
    if state is None:
        state = BoundState.root(ctx)
        counted = 1
    cursor = NodeCursor.from_bits([int(state.spins[t] != first[t]) for t in range(state.depth)], ctx.n)
    engine = HybridEngine(ctx, first, cell, frontier_limit, prune, progress)
    result = engine.solve(state, cursor, deadline)
    result.nodes += counted
    return result
