"""
贪心扩展

反复选取 |Σ_{j已赋值} J_ij s_j + h_i| 最大的未赋值变量 (并列取下标最小)，
令 s_i = -sign(该和)，和为 0 时取 -1。
"""
from typing import Optional, Sequence

import numpy as np

from instance.models import Assignment, IsingInstance


def greedy_extend(inst: IsingInstance, partial: Optional[Sequence[int]] = None) -> Assignment:
    """
    把部分赋值贪心扩展为完整赋值

    Args:
        inst: 实例
        partial: 长度 n 时 0 表示未赋值；更短时视为最后 len(partial) 个变量的赋值

    Returns:
        Assignment: 完整赋值
    """
    n = inst.n
    spins = np.zeros(n, dtype=np.int64)
    if partial is not None:
        values = np.asarray(partial, dtype=np.int64)
        if values.size > n:
            raise ValueError(f"partial assignment of length {values.size} exceeds n={n}")
        spins[n - values.size:] = values

    J = inst.matrix
    f = inst.h + J @ spins
    free = spins == 0
    for _ in range(int(free.sum())):
        scores = np.where(free, np.abs(f), -1)
        i = int(np.argmax(scores))
        s = 1 if f[i] < 0 else -1
        spins[i] = s
        free[i] = False
        f += J[:, i] * s
    return Assignment.from_array(spins)
