"""
界计算内核 (numba)

节点状态用三个量描述：
- pe:      已赋值部分的能量 Σ_{i<j<d} J_ij s_i s_j + Σ_{i<d} h_i s_i
- sigma:   对未赋值变量 j，σ_j = Σ_{i<d} J_ij s_i
- abs_sum: Σ_{j>=d} |σ_j + h_j·[omit]|

push_spin / pop_spin 只修改被赋值变量的前向邻居，代价 O(deg)。
"""
from utils.accel import KERNEL, njit


@njit(**KERNEL)
def push_spin(k, s, sigma, indptr, nbr, wts, h, omit, pe, abs_sum):
    """
    给变量 k 赋值 s (k 必须是当前深度)

    Args:
        k: 变量下标
        s: 自旋 ±1
        sigma: σ 数组 (原地修改)
        indptr, nbr, wts: 前向邻接
        h: 局部场
        omit: 1 表示场放进绝对值项
        pe: 父节点已赋值能量
        abs_sum: 父节点绝对值项

    Returns:
        (pe, abs_sum): 子节点的值
    """
    hk = h[k] if omit else 0
    pe = pe + s * (sigma[k] + h[k])
    abs_sum = abs_sum - abs(sigma[k] + hk)
    for p in range(indptr[k], indptr[k + 1]):
        j = nbr[p]
        hj = h[j] if omit else 0
        old = abs(sigma[j] + hj)
        sigma[j] += wts[p] * s
        abs_sum += abs(sigma[j] + hj) - old
    return pe, abs_sum


@njit(**KERNEL)
def pop_spin(k, s, sigma, indptr, nbr, wts):
    """撤销 push_spin 对 σ 的修改 (pe / abs_sum 由调用方的栈恢复)"""
    for p in range(indptr[k], indptr[k + 1]):
        sigma[nbr[p]] -= wts[p] * s


@njit(**KERNEL)
def pop_spin_full(k, s, sigma, indptr, nbr, wts, h, omit, pe, abs_sum):
    """push_spin 的精确逆操作，同时恢复 pe 与 abs_sum"""
    for p in range(indptr[k], indptr[k + 1]):
        j = nbr[p]
        hj = h[j] if omit else 0
        old = abs(sigma[j] + hj)
        sigma[j] -= wts[p] * s
        abs_sum += abs(sigma[j] + hj) - old
    hk = h[k] if omit else 0
    abs_sum = abs_sum + abs(sigma[k] + hk)
    pe = pe - s * (sigma[k] + h[k])
    return pe, abs_sum


@njit(**KERNEL)
def node_bound(depth, m, pe, abs_sum, etab, khoff, use_kh):
    """
    深度 depth 节点的下界

    HDK: pe - abs_sum + E_{m-depth}
    KH:  pe + khoff[depth]，khoff[d] = -Σ_{未全赋值的对}|J| - Σ_{j>=d}|h_j|
    """
    if use_kh:
        return pe + khoff[depth]
    return pe - abs_sum + etab[m - depth]
