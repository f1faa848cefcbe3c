"""
Kobe-Hartwig 界

根界放弃所有耦合：B(★) = -Σ_{i<j}|J_ij| - Σ_j|h_j|。
每给一个变量赋值，与已赋值变量之间的耦合变为精确值，界增加
2 Σ_{i<=k} |J_{i,k+1}| [J_{i,k+1} s_i s_{k+1} > 0]。
"""
from typing import Sequence

import numpy as np

from instance.models import IsingInstance


def kh_root(inst: IsingInstance, start: int = 0, with_fields: bool = True) -> int:
    """
    尾部子问题 (变量 start..n-1) 的 KH 根界

    Args:
        inst: 伊辛实例
        start: 子问题第一个变量 (0 起始)
        with_fields: 子问题是否含局部场

    Returns:
        int: 下界
    """
    bound = -sum(abs(int(v)) for (i, _), v in inst.couplings.items() if i >= start)
    if with_fields:
        bound -= sum(abs(int(v)) for v in inst.fields[start:])
    return bound


def kh_child(parent_bound: int, inst: IsingInstance, prefix: Sequence[int], s_next: int,
             with_fields: bool = True) -> int:
    """
    子节点 KH 界 (由父节点增量得到)

    Args:
        parent_bound: 父节点的 KH 界
        inst: 伊辛实例
        prefix: 已赋值的 s_0..s_{k-1}
        s_next: 变量 k 的取值
        with_fields: 是否含局部场

    Returns:
        int: 子节点界，不小于父节点界
    """
    k = len(prefix)
    if k >= inst.n:
        raise IndexError(f"cannot branch below depth {inst.n}")
    J = inst.matrix
    bound = int(parent_bound)
    for i, s_i in enumerate(prefix):
        w = int(J[i, k])
        if w * s_i * s_next > 0:
            bound += 2 * abs(w)
    if with_fields:
        h = int(inst.fields[k])
        if h * s_next > 0:
            bound += 2 * abs(h)
    return bound


def kh_offsets(inst: IsingInstance, with_fields: bool = True) -> np.ndarray:
    """
    每个深度的 KH 放弃量

    khoff[d] = -Σ_{i<j, j>=d}|J_ij| - Σ_{j>=d}|h_j|，于是 KH(s_0..s_{d-1}) = pe + khoff[d]。

    Returns:
        np.ndarray: 长度 n+1，khoff[n] = 0
    """
    column = np.triu(np.abs(inst.matrix), 1).sum(axis=0)
    if with_fields:
        column = column + np.abs(inst.h)
    tail = np.concatenate([np.cumsum(column[::-1])[::-1], np.zeros(1, dtype=np.int64)])
    return (-tail).astype(np.int64)


def kh_bound_direct(inst: IsingInstance, prefix: Sequence[int], with_fields: bool = True) -> int:
    """从头计算 KH 界 (测试与核对用)"""
    k = len(prefix)
    s = np.asarray(prefix, dtype=np.int64)
    J = inst.matrix[:k, :k]
    pe = int(s @ np.triu(J, 1) @ s) + int(inst.h[:k] @ s)
    return pe + int(kh_offsets(inst, with_fields)[k])
