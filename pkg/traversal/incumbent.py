"""
共享现任解

value 是长度 1 的 int64 数组，内核只读 (并发下读到旧值只损失剪枝能力)。
value 与赋值都只在 offer() 中加锁更新，因此 value 单调不增，始终对应一个已记录的解。
"""
import threading
from typing import Optional, Sequence, Tuple

import numpy as np

from const.const import Inf
from utils.logger import Logger

logger = Logger.get_logger()


class IncumbentCell:
    """单调递减的现任解"""

    def __init__(self, energy: Optional[int] = None, spins: Optional[Sequence[int]] = None):
        """
        Args:
            energy: 初始整数能量 (None 表示 +∞)
            spins: 初始赋值
        """
        self.value: np.ndarray = np.array([Inf if energy is None else int(energy)], dtype=np.int64)  # 内核可见的能量
        self._energy: Optional[int] = None if energy is None else int(energy)  # 锁内的能量
        self._spins: Optional[Tuple[int, ...]] = None if spins is None else tuple(int(s) for s in spins)  # 锁内的赋值
        self._lock = threading.Lock()
        self.improvements: int = 0  # 被接受的更新次数

    def offer(self, energy: int, spins: Sequence[int]) -> bool:
        """
        提交一个解，更好时替换现任解

        Args:
            energy: 整数能量
            spins: 赋值

        Returns:
            bool: 是否被接受
        """
        energy = int(energy)
        with self._lock:
            if self._energy is not None and energy >= self._energy:
                return False
            self._energy = energy
            self._spins = tuple(int(s) for s in spins)
            self.improvements += 1
            if energy < self.value[0]:
                self.value[0] = energy
        logger.debug(f"New incumbent {energy}")
        return True

    @property
    def energy(self) -> Optional[int]:
        with self._lock:
            return self._energy

    @property
    def spins(self) -> Optional[Tuple[int, ...]]:
        with self._lock:
            return self._spins

    def snapshot(self) -> Tuple[Optional[int], Optional[Tuple[int, ...]]]:
        """一致的 (能量, 赋值)"""
        with self._lock:
            return self._energy, self._spins

    def cutoff(self) -> int:
        """当前剪枝阈值"""
        return int(self.value[0])
