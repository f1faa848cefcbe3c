"""
问题模型模块

这个模块定义了三种问题表示以及它们共享的赋值类型。
主要功能：
- QuboInstance: 上三角稀疏 Q，x ∈ {0,1}^n
- MaxCutInstance: 带权无向图
- IsingInstance: 内部统一的最小化形式 (J, h, offset)，系数为 int64 精确整数
- Assignment: 自旋视图 {-1,+1} 与二值视图 {0,1}，s_i = 1 - 2 x_i

下标约定：QUBO / MaxCut 与文件一致从 1 开始，IsingInstance 内部从 0 开始。
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from const.const import CoefficientGuard, ProblemKind, Sense
from instance.errors import AssignmentError, InstanceError, OverflowGuardError

Number = Union[int, Fraction]


@dataclass(frozen=True)
class QuboInstance:
    """QUBO 实例：Σ_{i<=j} Q_ij x_i x_j，对角项为线性项 (x_i² = x_i)"""

    n: int  # 变量数
    entries: Tuple[Tuple[int, int, Number], ...]  # (i, j, Q_ij)，1 <= i <= j <= n
    sense: Sense = Sense.MIN  # 优化方向
    name: str = ""  # 实例名

    def __post_init__(self):
        seen = set()
        for i, j, _ in self.entries:
            if not (1 <= i <= j <= self.n):
                raise InstanceError(f"QUBO entry ({i}, {j}) violates 1 <= i <= j <= {self.n}")
            if (i, j) in seen:
                raise InstanceError(f"duplicate QUBO entry ({i}, {j})")
            seen.add((i, j))

    def objective(self, x: Sequence[int]) -> Number:
        """QUBO 目标值 (原始方向)"""
        if len(x) != self.n:
            raise AssignmentError(f"assignment length {len(x)} != n={self.n}")
        total = Fraction(0)
        for i, j, q in self.entries:
            total += Fraction(q) * x[i - 1] * x[j - 1]
        return _exact(total)


@dataclass(frozen=True)
class MaxCutInstance:
    """最大割实例：无向带权边 (i, j, w)，i < j"""

    n: int  # 节点数
    edges: Tuple[Tuple[int, int, Number], ...]  # (i, j, w_ij)，1 <= i < j <= n
    sense: Sense = Sense.MAX  # 默认求最大割
    name: str = ""  # 实例名

    def __post_init__(self):
        seen = set()
        for i, j, _ in self.edges:
            if i == j:
                raise InstanceError(f"self-loop on node {i}")
            if not (1 <= i < j <= self.n):
                raise InstanceError(f"edge ({i}, {j}) violates 1 <= i < j <= {self.n}")
            if (i, j) in seen:
                raise InstanceError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))

    @property
    def total_weight(self) -> Number:
        """W = Σ w_ij"""
        return _exact(sum((Fraction(w) for _, _, w in self.edges), Fraction(0)))

    def cut_value(self, spins: Sequence[int]) -> Number:
        """割值：两端自旋不同的边权之和"""
        if len(spins) != self.n:
            raise AssignmentError(f"assignment length {len(spins)} != n={self.n}")
        total = Fraction(0)
        for i, j, w in self.edges:
            if spins[i - 1] != spins[j - 1]:
                total += Fraction(w)
        return _exact(total)


@dataclass(frozen=True)
class Assignment:
    """赋值：自旋视图为主，二值视图由 s_i = 1 - 2 x_i 导出"""

    spins: Tuple[int, ...]  # {-1, +1}^n

    def __post_init__(self):
        for s in self.spins:
            if s not in (-1, 1):
                raise AssignmentError(f"spin value {s} not in {{-1, +1}}")

    @property
    def n(self) -> int:
        return len(self.spins)

    @property
    def binary(self) -> Tuple[int, ...]:
        """二值视图 x_i = (1 - s_i) / 2"""
        return tuple((1 - s) // 2 for s in self.spins)

    @classmethod
    def from_binary(cls, bits: Iterable[int]) -> "Assignment":
        """由二值向量构造"""
        return cls(tuple(1 - 2 * int(b) for b in bits))

    @classmethod
    def from_array(cls, spins: Iterable[int]) -> "Assignment":
        return cls(tuple(int(s) for s in spins))


@dataclass(frozen=True)
class IsingInstance:
    """
    伊辛实例 (内部统一形式，始终为最小化)

    energy(s) = (Σ_{i<j} J_ij s_i s_j + Σ_i h_i s_i + offset) / scale

    系数都是缩放后的精确整数，原始有理系数乘以分母最小公倍数 scale。
    objective_map = (a, b, c) 把不含 offset 的整数能量 raw 映射回原始问题的目标值：
    objective = (a * raw + b) / c。
    """

    n: int  # 自旋数
    couplings: Dict[Tuple[int, int], int]  # J_ij，0 <= i < j < n
    fields: Tuple[int, ...]  # h_i
    offset: int = 0  # 常数能量偏移 (已缩放)
    scale: int = 1  # 缩放因子
    kind: ProblemKind = ProblemKind.ISING  # 原始问题类型
    sense: Sense = Sense.MIN  # 原始优化方向
    objective_map: Optional[Tuple[int, int, int]] = None  # (a, b, c)
    name: str = field(default="", compare=False)  # 实例名

    def __post_init__(self):
        if self.n < 0:
            raise InstanceError(f"negative spin count {self.n}")
        if len(self.fields) != self.n:
            raise InstanceError(f"field vector length {len(self.fields)} != n={self.n}")
        if self.scale < 1:
            raise InstanceError(f"scale must be a positive integer, got {self.scale}")
        for (i, j), v in self.couplings.items():
            if i == j:
                raise InstanceError(f"self-coupling ({i}, {i}) is not allowed")
            if not (0 <= i < j < self.n):
                raise InstanceError(f"coupling ({i}, {j}) violates 0 <= i < j < {self.n}")
            if not isinstance(v, (int, np.integer)):
                raise InstanceError(f"coupling ({i}, {j}) must be an integer, got {v!r}")
        magnitude = self.coefficient_magnitude()
        if magnitude > CoefficientGuard:
            raise OverflowGuardError(
                f"root KH bound magnitude {magnitude} exceeds 2^62; coefficients too large")
        if self.objective_map is None:
            object.__setattr__(self, "objective_map", (1, self.offset, self.scale))

    # -------------------------------- 数值视图 --------------------------------

    def coefficient_magnitude(self) -> int:
        """Σ|J_ij| + Σ|h_i|，即 KH 根界 (含场) 的绝对值"""
        return sum(abs(int(v)) for v in self.couplings.values()) + sum(abs(int(v)) for v in self.fields)

    @cached_property
    def h(self) -> np.ndarray:
        """场向量 (int64)"""
        return np.asarray(self.fields, dtype=np.int64).reshape(self.n)

    @cached_property
    def matrix(self) -> np.ndarray:
        """对称稠密耦合矩阵 (int64，对角为 0)"""
        J = np.zeros((self.n, self.n), dtype=np.int64)
        for (i, j), v in self.couplings.items():
            J[i, j] = v
            J[j, i] = v
        return J

    @cached_property
    def forward_csr(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """前向邻接 (只含 j > i)：indptr, neighbors, weights"""
        return _csr(self.n, ((i, j, v) for (i, j), v in self.couplings.items() if v != 0))

    @cached_property
    def full_csr(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """对称邻接：indptr, neighbors, weights"""
        both = []
        for (i, j), v in self.couplings.items():
            if v != 0:
                both.append((i, j, v))
                both.append((j, i, v))
        return _csr(self.n, both)

    @cached_property
    def abs_row_sums(self) -> np.ndarray:
        """Σ_j |J_ij|"""
        return np.abs(self.matrix).sum(axis=1)

    # -------------------------------- 能量 --------------------------------

    def raw_energy(self, spins: Sequence[int]) -> int:
        """不含 offset、未除 scale 的整数能量 (Python int 精确计算)"""
        s = self._check(spins)
        total = 0
        for (i, j), v in self.couplings.items():
            total += int(v) * s[i] * s[j]
        for i, v in enumerate(self.fields):
            total += int(v) * s[i]
        return total

    def energy_of(self, raw: int) -> Number:
        """整数能量 -> 精确能量 (含 offset，除以 scale)"""
        return _exact(Fraction(int(raw) + self.offset, self.scale))

    def objective_of(self, raw: int) -> Number:
        """整数能量 -> 原始问题目标值 (QUBO 目标 / 割值 / 伊辛能量)"""
        a, b, c = self.objective_map
        return _exact(Fraction(a * int(raw) + b, c))

    def energy(self, spins: Sequence[int]) -> Number:
        """精确能量"""
        return self.energy_of(self.raw_energy(spins))

    def objective(self, spins: Sequence[int]) -> Number:
        """原始问题目标值"""
        return self.objective_of(self.raw_energy(spins))

    def _check(self, spins: Sequence[int]) -> Tuple[int, ...]:
        if len(spins) != self.n:
            raise AssignmentError(f"assignment length {len(spins)} != n={self.n}")
        s = tuple(int(v) for v in spins)
        for v in s:
            if v not in (-1, 1):
                raise AssignmentError(f"spin value {v} not in {{-1, +1}}")
        return s

    # -------------------------------- 变换 --------------------------------

    def permute(self, perm: Sequence[int]) -> "IsingInstance":
        """
        按排列重编号：新变量 p 对应原变量 perm[p]

        Args:
            perm: 分支位置 -> 原变量下标

        Returns:
            IsingInstance: 重排后的实例 (目标映射不变)
        """
        inverse = {old: new for new, old in enumerate(perm)}
        couplings = {}
        for (i, j), v in self.couplings.items():
            a, b = inverse[i], inverse[j]
            couplings[(min(a, b), max(a, b))] = v
        fields = tuple(self.fields[old] for old in perm)
        return IsingInstance(self.n, couplings, fields, self.offset, self.scale,
                             self.kind, self.sense, self.objective_map, self.name)

    def subproblem(self, start: int, keep_fields: bool = True) -> "IsingInstance":
        """
        尾部子问题：变量 start..n-1，重编号为 0..n-start-1，无 offset

        Args:
            start: 第一个保留变量
            keep_fields: 是否保留局部场

        Returns:
            IsingInstance: 子问题实例
        """
        couplings = {(i - start, j - start): v for (i, j), v in self.couplings.items() if i >= start}
        if keep_fields:
            fields = tuple(self.fields[start:])
        else:
            fields = (0,) * (self.n - start)
        return IsingInstance(self.n - start, couplings, fields, name=f"{self.name}[{start}:]")

    def to_dict(self) -> Dict:
        """JSON 导出 (下标从 1 开始，系数为原始单位)"""
        from utils.utils import json_number
        return {
            "name": self.name,
            "n": self.n,
            "kind": self.kind.value,
            "sense": self.sense.value,
            "scale": self.scale,
            "couplings": [[i + 1, j + 1, json_number(_exact(Fraction(v, self.scale)))]
                          for (i, j), v in sorted(self.couplings.items())],
            "fields": [json_number(_exact(Fraction(v, self.scale))) for v in self.fields],
            "offset": json_number(_exact(Fraction(self.offset, self.scale))),
        }


def energy(inst: IsingInstance, s: Sequence[int]) -> Number:
    """
    伊辛能量 Σ_{i<j} J_ij s_i s_j + Σ h_i s_i + offset (精确)

    Args:
        inst: 伊辛实例
        s: 自旋赋值

    Returns:
        Number: 能量，整数输入时为 int
    """
    return inst.energy(s)


def spins_to_binary(spins: Iterable[int]) -> Tuple[int, ...]:
    """s -> x，x_i = (1 - s_i) / 2"""
    return tuple((1 - int(s)) // 2 for s in spins)


def binary_to_spins(bits: Iterable[int]) -> Tuple[int, ...]:
    """x -> s，s_i = 1 - 2 x_i"""
    return tuple(1 - 2 * int(b) for b in bits)


def _csr(n: int, triples: Iterable[Tuple[int, int, int]]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    rows = sorted(triples)
    indptr = np.zeros(n + 1, dtype=np.int64)
    nbr = np.zeros(len(rows), dtype=np.int64)
    wts = np.zeros(len(rows), dtype=np.int64)
    for p, (i, j, v) in enumerate(rows):
        indptr[i + 1] += 1
        nbr[p] = j
        wts[p] = v
    np.cumsum(indptr, out=indptr)
    return indptr, nbr, wts


def _exact(value: Fraction) -> Number:
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return value
