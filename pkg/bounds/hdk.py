"""
Hartwig-Daske-Kobe 界

B_HDK(s_0..s_{k-1}) = pe - Σ_{j>=k} |σ_j + h_j·[omit]| + E_{n-k}

pe 含已赋值变量的耦合能量与场能量 (两种模式相同)。
BoundState 只持有一个 σ 数组，hdk_descend / hdk_backtrack 互为精确逆操作；
前沿节点保存 BoundState 的完整拷贝。
"""
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from bounds.kernels import node_bound, pop_spin_full, push_spin
from bounds.kh import kh_offsets
from bounds.table import SubproblemTable
from const.const import BoundKind, FieldMode
from instance.models import IsingInstance


class DepthError(IndexError):
    """超过叶子深度或在根节点回溯"""


@dataclass
class BoundContext:
    """
    一次搜索共享的只读数据 (实例数组、E 表、KH 偏移)
    """

    inst: IsingInstance  # 重排后的实例
    mode: FieldMode  # 局部场模式
    kind: BoundKind  # 对偶界类型
    indptr: np.ndarray  # 前向邻接
    nbr: np.ndarray
    wts: np.ndarray
    h: np.ndarray  # 局部场
    etab: np.ndarray  # E 表数组，长度 n+1
    khoff: np.ndarray  # KH 偏移，长度 n+1

    @classmethod
    def build(cls, inst: IsingInstance, table: Optional[SubproblemTable], mode: FieldMode = FieldMode.KEEP,
              kind: BoundKind = BoundKind.HDK) -> "BoundContext":
        """
        Args:
            inst: 实例 (变量顺序即分支顺序)
            table: E 表；KH 界时可以为空
            mode: 局部场模式
            kind: 对偶界类型

        Returns:
            BoundContext
        """
        indptr, nbr, wts = inst.forward_csr
        if table is None:
            if kind is BoundKind.HDK:
                raise ValueError("HDK bounding needs a subproblem table")
            etab = np.zeros(inst.n + 1, dtype=np.int64)
        else:
            etab = table.as_array(inst.n)
        return cls(inst, mode, kind, indptr, nbr, wts, inst.h, etab, kh_offsets(inst, True))

    @property
    def n(self) -> int:
        return self.inst.n

    @property
    def omit(self) -> bool:
        return self.mode.omit()

    @property
    def use_kh(self) -> bool:
        return self.kind is BoundKind.KH

    def bound(self, depth: int, pe: int, abs_sum: int) -> int:
        """深度 depth 节点的下界"""
        return int(node_bound(depth, self.n, pe, abs_sum, self.etab, self.khoff, self.use_kh))


@dataclass
class BoundState:
    """搜索节点的界状态"""

    depth: int  # 已赋值变量数 k
    partial_energy: int  # 已赋值部分能量
    abs_sum: int  # Σ_{j>=k} |σ_j (+h_j)|
    sigma: np.ndarray  # σ_j = Σ_{i<k} J_ij s_i
    spins: np.ndarray  # 已赋值的自旋，未赋值为 0
    bound: int  # 当前下界

    @classmethod
    def root(cls, ctx: BoundContext) -> "BoundState":
        """根节点状态"""
        n = ctx.n
        abs_sum = int(np.abs(ctx.h).sum()) if ctx.omit else 0
        return cls(0, 0, abs_sum, np.zeros(n, dtype=np.int64), np.zeros(n, dtype=np.int64),
                   ctx.bound(0, 0, abs_sum))

    def copy(self) -> "BoundState":
        return BoundState(self.depth, self.partial_energy, self.abs_sum, self.sigma.copy(), self.spins.copy(),
                          self.bound)

    def prefix(self) -> np.ndarray:
        """已赋值的自旋 s_0..s_{k-1}"""
        return self.spins[:self.depth]

    def same_as(self, other: "BoundState") -> bool:
        """逐项相等 (σ 只比较未赋值部分)"""
        return (self.depth == other.depth and self.partial_energy == other.partial_energy
                and self.abs_sum == other.abs_sum and self.bound == other.bound
                and np.array_equal(self.sigma[self.depth:], other.sigma[other.depth:])
                and np.array_equal(self.spins, other.spins))


def hdk_bound_direct(inst: IsingInstance, prefix: Sequence[int], table: SubproblemTable,
                     mode: FieldMode = FieldMode.KEEP) -> int:
    """
    从头计算 HDK 界

    Args:
        inst: 实例
        prefix: s_0..s_{k-1}
        table: E 表
        mode: 局部场模式

    Returns:
        int: 下界

    Raises:
        MissingTableEntry: 表中没有维度 n-k
    """
    k = len(prefix)
    if k > inst.n:
        raise DepthError(f"prefix length {k} exceeds n={inst.n}")
    s = np.asarray(prefix, dtype=np.int64)
    J = inst.matrix
    h = inst.h
    pe = int(s @ np.triu(J[:k, :k], 1) @ s) + int(h[:k] @ s)
    sigma = s @ J[:k, k:] if k > 0 else np.zeros(inst.n, dtype=np.int64)
    if mode.omit():
        sigma = sigma + h[k:]
    return pe - int(np.abs(sigma).sum()) + table.value(inst.n - k)


def hdk_descend(state: BoundState, ctx: BoundContext, s_next: int) -> BoundState:
    """
    给下一个变量赋值 (原地修改 state)

    Args:
        state: 深度 k 的状态
        ctx: 搜索上下文
        s_next: 变量 k 的取值

    Returns:
        BoundState: 深度 k+1 的状态 (即 state 本身)
    """
    k = state.depth
    if k >= ctx.n:
        raise DepthError(f"cannot descend below depth {ctx.n}")
    pe, abs_sum = push_spin(k, s_next, state.sigma, ctx.indptr, ctx.nbr, ctx.wts, ctx.h, ctx.omit,
                            state.partial_energy, state.abs_sum)
    state.spins[k] = s_next
    state.depth = k + 1
    state.partial_energy = int(pe)
    state.abs_sum = int(abs_sum)
    state.bound = ctx.bound(state.depth, state.partial_energy, state.abs_sum)
    return state


def hdk_backtrack(state: BoundState, ctx: BoundContext, s_undone: int) -> BoundState:
    """
    撤销最后一次 hdk_descend (原地修改 state)

    Args:
        state: 深度 k+1 的状态
        ctx: 搜索上下文
        s_undone: 被撤销的变量 k 的取值

    Returns:
        BoundState: 深度 k 的状态
    """
    if state.depth == 0:
        raise DepthError("cannot backtrack from the root")
    k = state.depth - 1
    if state.spins[k] != s_undone:
        raise ValueError(f"variable {k} holds {state.spins[k]}, not {s_undone}")
    pe, abs_sum = pop_spin_full(k, s_undone, state.sigma, ctx.indptr, ctx.nbr, ctx.wts, ctx.h, ctx.omit,
                                state.partial_energy, state.abs_sum)
    state.spins[k] = 0
    state.depth = k
    state.partial_energy = int(pe)
    state.abs_sum = int(abs_sum)
    state.bound = ctx.bound(k, state.partial_energy, state.abs_sum)
    return state


def extrapolate_global_bound(b_sub: int, inst: IsingInstance, k: int, mode: FieldMode = FieldMode.KEEP) -> int:
    """
    由尾部子问题的下界推出全问题的下界

    B = -Σ_{i<j}|J_ij| + Σ_{k<=i<j}|J_ij| + B_sub - (场项)
    keep 模式减去前缀的 Σ_{i<k}|h_i|；omit 模式子问题不含场，减去全部 Σ|h_i|。

    Args:
        b_sub: 变量 k..n-1 组成的子问题的任一有效下界
        inst: 全问题 (重排后)
        k: 前缀长度
        mode: 局部场模式

    Returns:
        int: 全问题下界
    """
    touching = sum(abs(int(v)) for (i, _), v in inst.couplings.items() if i < k)
    fields = inst.fields if mode.omit() else inst.fields[:k]
    return int(b_sub) - touching - sum(abs(int(v)) for v in fields)
