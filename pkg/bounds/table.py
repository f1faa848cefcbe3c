"""
子问题表 (E 表)

E_l 为重排后最后 l 个变量组成的子问题的精确最优能量，l = 2..n-k_min-1；
更大的 l 用该子问题的 KH 根界代替。E_0 = 0，E_1 在 keep 模式下为 -|h_{n-1}|，omit 模式下为 0。
"""
from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from bounds.kh import kh_root
from const.const import FieldMode
from instance.models import IsingInstance


class MissingTableEntry(KeyError):
    """E 表缺少请求的维度"""


@dataclass
class SubproblemTable:
    """尾部子问题最优值表"""

    n: int  # 全问题维度
    k_min: int  # 使用 KH 根界代替 E 的层数
    mode: FieldMode  # 局部场模式
    kh_fallback: np.ndarray  # 每个维度 l 的 KH 根界，长度 n+1
    exact: Dict[int, int] = field(default_factory=dict)  # l -> E_l
    frozen: bool = False  # 主搜索开始前冻结

    @classmethod
    def build(cls, inst: IsingInstance, k_min: int, mode: FieldMode) -> "SubproblemTable":
        """
        创建只含 KH 根界的空表

        Args:
            inst: 重排后的实例
            k_min: KH 层数 (0 <= k_min <= n-2)
            mode: 局部场模式

        Returns:
            SubproblemTable
        """
        n = inst.n
        keep = not mode.omit()
        fallback = np.zeros(n + 1, dtype=np.int64)
        for l in range(1, n + 1):
            fallback[l] = kh_root(inst, n - l, with_fields=keep)
        return cls(n, k_min, mode, fallback)

    @property
    def limit(self) -> int:
        """精确求解的最大维度 L = n - k_min - 1"""
        return self.n - self.k_min - 1

    def dimensions(self) -> range:
        """需要精确求解的维度 2..L"""
        return range(2, self.limit + 1)

    def record(self, l: int, value: int):
        """记录 E_l"""
        if self.frozen:
            raise RuntimeError("subproblem table is frozen")
        if l not in self.dimensions():
            raise MissingTableEntry(f"dimension {l} is not an exact table entry (2..{self.limit})")
        self.exact[l] = int(value)

    def freeze(self):
        self.frozen = True

    def value(self, l: int) -> int:
        """
        维度 l 的下界值

        Args:
            l: 子问题维度 0..n

        Returns:
            int: E_l (精确) 或 KH 根界

        Raises:
            MissingTableEntry: 应精确求解但尚未求解
        """
        if l == 0:
            return 0
        if l == 1:
            return int(self.kh_fallback[1])
        if l in self.exact:
            return self.exact[l]
        if self.limit < l <= self.n:
            return int(self.kh_fallback[l])
        raise MissingTableEntry(f"E_{l} has not been computed")

    def as_array(self, upto: int = None) -> np.ndarray:
        """
        内核用的 etab 数组，长度 upto+1；尚未求解的维度用 KH 根界

        Args:
            upto: 最大维度 (默认 n)

        Returns:
            np.ndarray: int64
        """
        upto = self.n if upto is None else upto
        etab = self.kh_fallback[:upto + 1].copy()
        etab[0] = 0
        for l, v in self.exact.items():
            if l <= upto:
                etab[l] = v
        return etab

    def to_dict(self) -> Dict[int, int]:
        """全部维度的取值 (报告里的 E 表)"""
        return {l: int(self.exact.get(l, self.kh_fallback[l])) for l in range(1, self.n + 1)}
