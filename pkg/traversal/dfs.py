"""
深度优先搜索引擎

DepthFirstEngine 持有内核需要的全部数组，可以反复 load() 不同的子树根 (混合搜索的 DFS 分支)。
每次内核调用最多计算 ChunkNodes 个节点，之后检查时间并发布现任解。
"""
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from bounds.hdk import BoundContext, BoundState
from const.const import ChunkNodes, Inf
from ordering.order import value_orders
from traversal.incumbent import IncumbentCell
from traversal.kernels import dfs_kernel
from utils.logger import Logger

logger = Logger.get_logger()


@dataclass
class SearchResult:
    """一次 (子) 树搜索的结果"""

    n: int  # 变量数
    best_energy: Optional[int] = None  # 本次搜索找到的最好整数能量
    best_spins: Optional[Tuple[int, ...]] = None  # 对应赋值 (搜索实例的变量顺序)
    complete: bool = True  # 是否搜索完整
    nodes: int = 0  # 计算过界的节点数 (含叶子)
    leaves: int = 0  # 访问到的叶子数
    improvements: int = 0  # 找到更好解的次数
    open_bound: int = Inf  # 未搜索部分的下界，完整时为 Inf
    pruned_at: np.ndarray = field(default=None)  # 每个深度剪掉的节点数

    def __post_init__(self):
        if self.pruned_at is None:
            self.pruned_at = np.zeros(self.n + 1, dtype=np.int64)

    def skipped_leaves(self) -> int:
        """被剪掉的叶子总数 Σ pruned_d · 2^{n-d}"""
        return sum(int(c) << (self.n - d) for d, c in enumerate(self.pruned_at))

    def merge(self, other: "SearchResult") -> "SearchResult":
        """合并另一个 (不相交子树的) 结果"""
        if other.best_energy is not None and (self.best_energy is None or other.best_energy < self.best_energy):
            self.best_energy = other.best_energy
            self.best_spins = other.best_spins
        self.complete = self.complete and other.complete
        self.nodes += other.nodes
        self.leaves += other.leaves
        self.improvements += other.improvements
        self.open_bound = min(self.open_bound, other.open_bound)
        self.pruned_at = self.pruned_at + other.pruned_at
        return self


class DepthFirstEngine:
    """整数编码的深度优先搜索"""

    def __init__(self, ctx: BoundContext, first: np.ndarray, cell: IncumbentCell, prune: bool = True):
        """
        Args:
            ctx: 搜索上下文
            first: 每个变量的第一个取值
            cell: 共享现任解
            prune: 是否剪枝 (关闭时完整枚举)
        """
        n = ctx.n
        self.ctx: BoundContext = ctx  # 搜索上下文
        self.first: np.ndarray = np.asarray(first, dtype=np.int64)  # 取值顺序
        self.cell: IncumbentCell = cell  # 共享现任解
        self.params: np.ndarray = np.array([n, int(ctx.omit), int(ctx.use_kh), int(prune), 0], dtype=np.int64)
        self.cur: np.ndarray = np.array([0, 1], dtype=np.int64)  # [d, done]
        self.bits: np.ndarray = np.zeros(n, dtype=np.int64)
        self.spins: np.ndarray = np.zeros(n, dtype=np.int64)
        self.sigma: np.ndarray = np.zeros(n, dtype=np.int64)
        self.pe_stack: np.ndarray = np.zeros(n + 1, dtype=np.int64)
        self.abs_stack: np.ndarray = np.zeros(n + 1, dtype=np.int64)
        self.bound_stack: np.ndarray = np.zeros(n + 1, dtype=np.int64)
        self.best: np.ndarray = np.array([Inf], dtype=np.int64)  # 本地现任能量
        self.best_spins: np.ndarray = np.zeros(n, dtype=np.int64)
        self.stats: np.ndarray = np.zeros(3, dtype=np.int64)  # [nodes, leaves, improvements]
        self.pruned_at: np.ndarray = np.zeros(n + 1, dtype=np.int64)
        self._published: int = Inf  # 已发布到 cell 的本地最好能量

    def load(self, state: BoundState):
        """
        把子树根装入引擎

        Args:
            state: 子树根的界状态 (不会被修改)
        """
        d = state.depth
        np.copyto(self.sigma, state.sigma)
        self.spins[:d] = state.spins[:d]
        self.pe_stack[d] = state.partial_energy
        self.abs_stack[d] = state.abs_sum
        self.bound_stack[d] = state.bound
        self.params[4] = d
        self.cur[0] = d
        self.cur[1] = 0

    @property
    def done(self) -> bool:
        return bool(self.cur[1])

    def step(self, budget: int = ChunkNodes) -> int:
        """调用一次内核，返回计算的节点数"""
        ctx = self.ctx
        visited = dfs_kernel(self.params, ctx.indptr, ctx.nbr, ctx.wts, ctx.h, ctx.etab, ctx.khoff, self.first,
                             self.cur, self.bits, self.spins, self.sigma, self.pe_stack, self.abs_stack,
                             self.bound_stack, self.best, self.best_spins, self.cell.value, self.stats,
                             self.pruned_at, budget)
        self.publish()
        return int(visited)

    def run(self, deadline: Optional[float] = None, on_chunk: Optional[Callable[[], None]] = None) -> bool:
        """
        搜索当前子树直到完成或超时

        Args:
            deadline: time.monotonic() 截止时间
            on_chunk: 每次内核调用 (及发布现任解) 之后的回调

        Returns:
            bool: 是否完成
        """
        while not self.done:
            self.step()
            if on_chunk is not None:
                on_chunk()
            if deadline is not None and time.monotonic() >= deadline:
                break
            logger.debug(f"DFS progress: {int(self.stats[0])} nodes, depth {int(self.cur[0])}")
        return self.done

    def publish(self):
        """本地更好的解发布到共享现任解"""
        if self.best[0] < self._published:
            self._published = int(self.best[0])
            self.cell.offer(self._published, self.best_spins.copy())

    def open_bound(self) -> int:
        """未搜索部分的下界 (完成时为 Inf)"""
        if self.done:
            return Inf
        r = int(self.params[4])
        d = int(self.cur[0])
        bound = int(self.bound_stack[d])
        for t in range(r, d):
            if self.bits[t] == 0:
                bound = min(bound, int(self.bound_stack[t]))
        return bound

    def result(self) -> SearchResult:
        """累计结果"""
        best = None if self.best[0] == Inf else int(self.best[0])
        spins = None if best is None else tuple(int(s) for s in self.best_spins)
        return SearchResult(self.ctx.n, best, spins, self.done, int(self.stats[0]), int(self.stats[1]),
                            int(self.stats[2]), self.open_bound(), self.pruned_at.copy())


def dfs_solve(ctx: BoundContext, cell: IncumbentCell, first: Optional[np.ndarray] = None,
              deadline: Optional[float] = None, state: Optional[BoundState] = None, prune: bool = True) -> SearchResult:
    """
    深度优先求解 (子) 树

    Args:
        ctx: 搜索上下文 (E 表已就绪)
        cell: 现任解 (通常已由启发式初始化)
        first: 取值顺序，默认按局部场符号
        deadline: 截止时间
        state: 子树根，默认为整棵树的根 (此时根节点计入节点数)
        prune: 是否剪枝

    Returns:
        SearchResult: 未完成时 complete=False，open_bound 为未搜索部分的下界
    """
    if first is None:
        first = value_orders(ctx.inst)
    counted = 0
    if state is None:
        state = BoundState.root(ctx)
        counted = 1

    engine = DepthFirstEngine(ctx, first, cell, prune)
    if prune and state.bound >= cell.cutoff():
        result = SearchResult(ctx.n, nodes=counted)
        result.pruned_at[state.depth] += 1
        return result

    engine.load(state)
    engine.run(deadline)
    result = engine.result()
    result.nodes += counted
    return result
