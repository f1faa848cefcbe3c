"""
模拟退火

单自旋翻转，局部场缓存 f_i = h_i + Σ_j J_ij s_j，翻转代价 ΔE = -2 s_i f_i，O(deg) 更新。
温度按几何插值从 t_start 降到 t_end，返回过程中见到的最好解 (包含初始解)。
能量比较全部是整数，只有接受概率用浮点。
"""
import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from instance.models import Assignment, IsingInstance
from utils.accel import KERNEL, njit
from utils.logger import Logger

logger = Logger.get_logger()


@dataclass(frozen=True)
class AnnealSchedule:
    """退火参数"""

    sweeps: int = 1000  # 全量单自旋翻转轮数
    restarts: int = 4  # 重启次数
    t_start: Optional[float] = None  # 初始温度，None 表示 max_i Σ_j|J_ij| + |h_i|
    t_end: float = 0.01  # 终止温度
    seed: int = 0  # 随机种子，第 r 次重启用 seed + r

    def __post_init__(self):
        if self.sweeps < 1:
            raise ValueError(f"sweeps must be at least 1, got {self.sweeps}")
        if self.restarts < 1:
            raise ValueError(f"restarts must be at least 1, got {self.restarts}")
        if not self.t_end > 0:
            raise ValueError(f"t_end must be positive, got {self.t_end}")
        if self.t_start is not None and self.t_start < self.t_end:
            raise ValueError(f"t_start {self.t_start} is below t_end {self.t_end}")

    @classmethod
    def from_config(cls, config: Dict, seed: int = 0) -> "AnnealSchedule":
        """由配置字典构造 (solver.anneal.<name>)"""
        config = config or {}
        return cls(sweeps=int(config.get('sweeps', 1000)),
                   restarts=int(config.get('restarts', 1)),
                   t_start=config.get('t_start'),
                   t_end=float(config.get('t_end', 0.01)),
                   seed=seed)

    def start_temperature(self, inst: IsingInstance) -> float:
        """初始温度"""
        if self.t_start is not None:
            return float(self.t_start)
        if inst.n == 0:
            return self.t_end
        hottest = int((inst.abs_row_sums + np.abs(inst.h)).max())
        return max(float(hottest), self.t_end)


@njit(**KERNEL)
def anneal_kernel(indptr, nbr, wts, h, spins, sweeps, t_start, t_end, seed, best_spins):
    """
    一次退火 (原地修改 spins，最好解写入 best_spins)

    Args:
        indptr, nbr, wts: 对称邻接
        h: 局部场
        spins: 初始赋值
        sweeps: 轮数
        t_start, t_end: 温度
        seed: 随机种子
        best_spins: 输出

    Returns:
        int: 最好解的整数能量 (不含 offset)
    """
    n = spins.shape[0]
    np.random.seed(seed)

    f = h.copy()
    for i in range(n):
        for p in range(indptr[i], indptr[i + 1]):
            f[i] += wts[p] * spins[nbr[p]]
    pair = 0
    field = 0
    for i in range(n):
        pair += spins[i] * (f[i] - h[i])
        field += spins[i] * h[i]
    energy = pair // 2 + field

    best = energy
    for i in range(n):
        best_spins[i] = spins[i]

    ratio = t_end / t_start
    for sweep in range(sweeps):
        if sweeps > 1:
            temperature = t_start * ratio ** (sweep / (sweeps - 1))
        else:
            temperature = t_start
        for i in range(n):
            delta = -2 * spins[i] * f[i]
            if delta > 0 and np.random.random() >= math.exp(-delta / temperature):
                continue
            s = -spins[i]
            spins[i] = s
            energy += delta
            for p in range(indptr[i], indptr[i + 1]):
                f[nbr[p]] += 2 * wts[p] * s
            if energy < best:
                best = energy
                for j in range(n):
                    best_spins[j] = spins[j]
    return best


def anneal(inst: IsingInstance, sched: AnnealSchedule, init: Optional[Sequence[int]] = None) -> Tuple[np.ndarray, int]:
    """
    多次重启退火

    Args:
        inst: 实例
        sched: 退火参数
        init: 初始赋值，只用于第一次重启；其余重启从随机赋值开始

    Returns:
        (spins, raw): 最好解与其整数能量
    """
    n = inst.n
    if n == 0:
        return np.zeros(0, dtype=np.int64), 0
    indptr, nbr, wts = inst.full_csr
    t_start = sched.start_temperature(inst)

    best_spins = np.ones(n, dtype=np.int64)
    best = None
    for r in range(sched.restarts):
        seed = sched.seed + r
        if r == 0 and init is not None:
            spins = np.array(init, dtype=np.int64)
        else:
            spins = np.random.default_rng(seed).choice(np.array([-1, 1], dtype=np.int64), size=n)
        out = np.empty(n, dtype=np.int64)
        energy = int(anneal_kernel(indptr, nbr, wts, inst.h, spins, sched.sweeps, t_start, sched.t_end,
                                   seed, out))
        if best is None or energy < best:
            best = energy
            best_spins = out
    logger.debug(f"Annealed {inst.name or 'instance'} (n={n}): best raw energy {best}")
    return best_spins, best


def simulated_annealing(inst: IsingInstance, init: Optional[Assignment] = None,
                        sched: AnnealSchedule = AnnealSchedule()) -> Assignment:
    """
    模拟退火，返回见到的最好赋值

    Args:
        inst: 实例
        init: 初始赋值，None 表示随机
        sched: 退火参数

    Returns:
        Assignment: 能量不高于 init
    """
    spins, _ = anneal(inst, sched, None if init is None else init.spins)
    return Assignment.from_array(spins)
