"""
暴力枚举 (验证用)

前 p 个变量的 2^p 种取值分给线程池，每个前缀用格雷码枚举剩余变量，每步只翻转一个自旋。
"""
from typing import Optional, Tuple

import numpy as np
from joblib import Parallel, delayed

from const.const import BruteForceMaxN
from instance.models import IsingInstance
from utils.accel import KERNEL, njit
from utils.logger import Logger

logger = Logger.get_logger()


class OracleSizeError(ValueError):
    """实例太大，无法暴力枚举"""


@njit(**KERNEL)
def gray_kernel(J, h, prefix, out):
    """
    固定前缀，枚举剩余变量

    Args:
        J: 对称稠密耦合矩阵
        h: 局部场
        prefix: 前 p 个变量的取值
        out: 最好赋值 (输出)

    Returns:
        int: 最小整数能量
    """
    n = h.shape[0]
    p = prefix.shape[0]
    m = n - p
    s = np.ones(n, dtype=np.int64)
    for i in range(p):
        s[i] = prefix[i]

    f = h.copy()
    for i in range(n):
        for j in range(n):
            f[i] += J[i, j] * s[j]
    energy = 0
    for i in range(n):
        energy += s[i] * (f[i] - h[i])
    energy = energy // 2
    for i in range(n):
        energy += s[i] * h[i]

    best = energy
    for i in range(n):
        out[i] = s[i]

    for g in range(1, 1 << m):
        bit = 0
        while not (g >> bit) & 1:
            bit += 1
        i = p + bit
        energy += -2 * s[i] * f[i]
        s[i] = -s[i]
        for j in range(n):
            f[j] += 2 * J[j, i] * s[i]
        if energy < best:
            best = energy
            for j in range(n):
                out[j] = s[j]
    return best


def brute_force(inst: IsingInstance, jobs: int = 1, prefix_bits: Optional[int] = None) -> Tuple[int, Tuple[int, ...]]:
    """
    枚举全部 2^n 个赋值

    Args:
        inst: 实例 (n <= 26)
        jobs: 线程数
        prefix_bits: 前缀位数，默认 jobs > 1 时为 min(n, 4)

    Returns:
        (raw, spins): 最小整数能量 (不含 offset) 与一个最优赋值

    Raises:
        OracleSizeError: n 超过上限
    """
    n = inst.n
    if n > BruteForceMaxN:
        raise OracleSizeError(f"brute force is limited to n <= {BruteForceMaxN}, got n={n}")
    if n == 0:
        return 0, ()
    if prefix_bits is None:
        prefix_bits = min(n, 4) if jobs > 1 else 0
    J = inst.matrix
    h = inst.h

    def run(index: int):
        prefix = np.array([1 - 2 * ((index >> (prefix_bits - 1 - t)) & 1) for t in range(prefix_bits)],
                          dtype=np.int64)
        out = np.empty(n, dtype=np.int64)
        return int(gray_kernel(J, h, prefix, out)), out

    results = Parallel(n_jobs=jobs, prefer="threads", require="sharedmem")(
        delayed(run)(index) for index in range(1 << prefix_bits))
    best, spins = min(results, key=lambda item: item[0])
    logger.debug(f"Brute force over 2^{n} assignments: {best}")
    return best, tuple(int(s) for s in spins)
