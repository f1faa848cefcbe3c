"""
变量重排序与取值顺序

自底向上构造分支顺序：第 i 步 (i = 1..n) 从剩余变量中选出一个放到位置 n-i，
已放置的变量集合 C 就是当前的尾部子问题。
每一步先在 C 上跑一次很短的退火得到 s★ (初值为上一步 s★ 的贪心扩展)，
再对每个候选变量 v 计算

    E_v = s_v h_v + Σ_{j∈C} J_vj s_v s★_j      (s_v 取全问题退火解 s_ref 的值)
    H1  = Σ_{j∈C}|J_vj| + |E_v|
    H2  = Σ_{j∈C}|J_vj| - E_v

i < n - 2k_min 时取 H1 最小者，否则取 H2 最小者；并列取原下标最小者。
耦合强、容易产生冲突的变量因此留在树的上层。
"""
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from instance.models import Assignment, IsingInstance
from primal.anneal import AnnealSchedule, anneal
from primal.greedy import greedy_extend
from utils.logger import Logger

logger = Logger.get_logger()


@dataclass(frozen=True)
class VariableOrder:
    """分支顺序：perm[p] 为位置 p 上的原变量下标 (0 起始)"""

    perm: Tuple[int, ...]  # 位置 -> 原变量

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"not a permutation of 0..{len(self.perm) - 1}: {self.perm}")

    @classmethod
    def identity(cls, n: int) -> "VariableOrder":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.perm)

    @cached_property
    def inverse(self) -> Tuple[int, ...]:
        """原变量 -> 位置"""
        inv = [0] * self.n
        for p, v in enumerate(self.perm):
            inv[v] = p
        return tuple(inv)

    def apply(self, inst: IsingInstance) -> IsingInstance:
        """重排实例"""
        return inst.permute(self.perm)

    def pull_back(self, spins: Sequence[int]) -> Tuple[int, ...]:
        """重排后实例的赋值 -> 原变量顺序的赋值"""
        return tuple(int(spins[self.inverse[v]]) for v in range(self.n))

    def push_forward(self, spins: Sequence[int]) -> Tuple[int, ...]:
        """原变量顺序的赋值 -> 重排后实例的赋值"""
        return tuple(int(spins[v]) for v in self.perm)

    def to_list(self) -> List[int]:
        """JSON 输出 (1 起始)"""
        return [v + 1 for v in self.perm]


def value_order(h_i: int) -> Tuple[int, int]:
    """
    取值顺序：h_i >= 0 时先试 -1，否则先试 +1

    Args:
        h_i: 局部场

    Returns:
        (first, second)
    """
    return (-1, 1) if h_i >= 0 else (1, -1)


def value_orders(inst: IsingInstance) -> np.ndarray:
    """每个变量的第一个取值 (int64 数组)"""
    return np.where(inst.h >= 0, -1, 1).astype(np.int64)


def _contribution(inst_sub: IsingInstance, i: int, s_star: Sequence[int]) -> Tuple[int, int]:
    """(Σ_{j≠i}|J_ij|, E_i(s★))"""
    J = inst_sub.matrix
    s = np.asarray(s_star, dtype=np.int64)
    degree = int(np.abs(J[i]).sum())
    energy = int(s[i] * inst_sub.h[i] + s[i] * (J[i] @ s))
    return degree, energy


def score_h1(inst_sub: IsingInstance, i: int, s_star: Sequence[int]) -> int:
    """
    H1(i) = Σ_{j≠i}|J_ij| + |E_i(s★)|

    Args:
        inst_sub: 候选子问题
        i: 候选变量 (子问题内下标)
        s_star: 子问题的赋值

    Returns:
        int: 分数
    """
    degree, energy = _contribution(inst_sub, i, s_star)
    return degree + abs(energy)


def score_h2(inst_sub: IsingInstance, i: int, s_star: Sequence[int]) -> int:
    """H2(i) = Σ_{j≠i}|J_ij| - E_i(s★)"""
    degree, energy = _contribution(inst_sub, i, s_star)
    return degree - energy


def induced_subinstance(inst: IsingInstance, variables: Sequence[int]) -> IsingInstance:
    """
    由变量子集诱导的子实例，按 variables 的顺序重编号

    Args:
        inst: 实例
        variables: 原变量下标

    Returns:
        IsingInstance: 无 offset
    """
    index = {v: p for p, v in enumerate(variables)}
    couplings = {}
    for (i, j), w in inst.couplings.items():
        if i in index and j in index:
            a, b = index[i], index[j]
            couplings[(min(a, b), max(a, b))] = w
    fields = tuple(inst.fields[v] for v in variables)
    return IsingInstance(len(variables), couplings, fields, name=f"{inst.name}[induced]")


def candidate_scores(inst: IsingInstance, placed: Sequence[int], s_star: Sequence[int],
                     s_ref: Sequence[int], use_h2: bool) -> np.ndarray:
    """
    所有变量相对已放置集合的 H1 / H2 分数 (已放置变量的分数无意义)

    Args:
        inst: 全问题
        placed: 已放置的原变量
        s_star: placed 上的 s★ (与 placed 同序)
        s_ref: 全问题参考赋值
        use_h2: True 用 H2

    Returns:
        np.ndarray: int64，长度 n
    """
    s_ref = np.asarray(s_ref, dtype=np.int64)
    if len(placed):
        block = inst.matrix[:, list(placed)]
        degree = np.abs(block).sum(axis=1)
        energy = s_ref * inst.h + s_ref * (block @ np.asarray(s_star, dtype=np.int64))
    else:
        degree = np.zeros(inst.n, dtype=np.int64)
        energy = s_ref * inst.h
    return degree - energy if use_h2 else degree + np.abs(energy)


def build_order(inst: IsingInstance, k_min: int, sched: AnnealSchedule,
                s_ref: Optional[Sequence[int]] = None) -> VariableOrder:
    """
    构造全局分支顺序

    Args:
        inst: 全问题
        k_min: KH 层数
        sched: 每一步使用的短退火参数
        s_ref: 全问题参考赋值 (默认用 sched 退火一次)

    Returns:
        VariableOrder
    """
    n = inst.n
    if n < 2:
        return VariableOrder.identity(n)
    if s_ref is None:
        s_ref, _ = anneal(inst, sched)

    switch = n - 2 * k_min
    placed: List[int] = []
    s_star = np.zeros(0, dtype=np.int64)
    remaining = np.ones(n, dtype=bool)

    for i in range(1, n + 1):
        if placed:
            sub = induced_subinstance(inst, placed)
            # 上一步的 s★ 覆盖 placed[:-1]，新变量由贪心补全
            start = np.zeros(len(placed), dtype=np.int64)
            start[:len(s_star)] = s_star
            start = greedy_extend(sub, start).spins
            s_star, _ = anneal(sub, replace(sched, seed=sched.seed + i), start)

        scores = candidate_scores(inst, placed, s_star, s_ref, i >= switch)
        v = int(np.argmin(np.where(remaining, scores, np.iinfo(np.int64).max)))
        placed.append(v)
        remaining[v] = False

    # placed[0] 在最深的位置 n-1
    order = VariableOrder(tuple(reversed(placed)))
    logger.info(f"Built variable order for {inst.name or 'instance'} (n={n}, H2 from step {max(switch, 1)})")
    return order
