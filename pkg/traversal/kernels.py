"""
深度优先搜索内核 (numba)

所有搜索状态保存在调用方持有的 numpy 数组里，内核每次最多计算 budget 个节点界后返回，
调用方借此检查时间、发布现任解，然后再次调用继续搜索。

数组约定 (t 为变量下标，d 为深度)：
- bits[t]:         0 正在搜索第一个取值，1 正在搜索第二个取值
- spins[t]:        变量 t 当前的取值
- pe_stack[d]:     深度 d 节点的已赋值能量
- abs_stack[d]:    深度 d 节点的绝对值项
- bound_stack[d]:  深度 d 节点的下界
- cur = [d, done]: d 为待展开节点的深度
- stats = [nodes, leaves, improvements]
- pruned_at[d]:    在深度 d 剪掉的节点数
"""
from bounds.kernels import node_bound, pop_spin, push_spin
from utils.accel import KERNEL, njit


@njit(**KERNEL)
def _enter_child(t, s, m, omit, use_kh, prune, indptr, nbr, wts, h, etab, khoff, sigma,
                 pe_stack, abs_stack, bound_stack, best, shared, stats, pruned_at):
    """给变量 t 赋值 s 并计算子节点界；被剪枝时撤销赋值并返回 False"""
    pe, abs_sum = push_spin(t, s, sigma, indptr, nbr, wts, h, omit, pe_stack[t], abs_stack[t])
    d = t + 1
    pe_stack[d] = pe
    abs_stack[d] = abs_sum
    bound = node_bound(d, m, pe, abs_sum, etab, khoff, use_kh)
    bound_stack[d] = bound
    stats[0] += 1
    cutoff = best[0] if best[0] < shared[0] else shared[0]
    if prune and bound >= cutoff:
        pruned_at[d] += 1
        pop_spin(t, s, sigma, indptr, nbr, wts)
        return False
    return True


@njit(**KERNEL)
def dfs_kernel(params, indptr, nbr, wts, h, etab, khoff, first, cur, bits, spins, sigma,
               pe_stack, abs_stack, bound_stack, best, best_spins, shared, stats, pruned_at, budget):
    """
    从 cur 继续深度优先搜索以 root_depth 为根的子树

    Args:
        params: [m, omit, use_kh, prune, root_depth]
        indptr, nbr, wts: 前向邻接
        h: 局部场
        etab: E 表数组
        khoff: KH 偏移
        first: 每个变量的第一个取值
        cur: [d, done]
        best: 本地现任能量 (长度 1)
        best_spins: 本地现任赋值
        shared: 所有工作线程共享的现任能量 (长度 1，只读；由调用方在 publish() 中加锁更新)
        budget: 本次调用最多计算的节点数

    Returns:
        int: 本次调用计算的节点数
    """
    m = params[0]
    omit = params[1]
    use_kh = params[2]
    prune = params[3]
    r = params[4]

    start = stats[0]
    d = cur[0]
    while cur[1] == 0 and stats[0] - start < budget:
        if d == m:
            # 叶子：界就是精确能量
            stats[1] += 1
            energy = pe_stack[m]
            if energy < best[0]:
                best[0] = energy
                for i in range(m):
                    best_spins[i] = spins[i]
                stats[2] += 1
            if m == r:
                cur[1] = 1
                break
            t = m - 1
            pop_spin(t, spins[t], sigma, indptr, nbr, wts)
        else:
            t = d
            bits[t] = 0
            spins[t] = first[t]
            if _enter_child(t, spins[t], m, omit, use_kh, prune, indptr, nbr, wts, h, etab, khoff, sigma,
                            pe_stack, abs_stack, bound_stack, best, shared, stats, pruned_at):
                d = t + 1
                continue

        # 变量 t 的当前取值已搜索完，回溯到下一个未访问的兄弟
        while True:
            if bits[t] == 0:
                bits[t] = 1
                spins[t] = -first[t]
                if _enter_child(t, spins[t], m, omit, use_kh, prune, indptr, nbr, wts, h, etab, khoff, sigma,
                                pe_stack, abs_stack, bound_stack, best, shared, stats, pruned_at):
                    d = t + 1
                    break
            t -= 1
            if t < r:
                cur[1] = 1
                d = r
                break
            pop_spin(t, spins[t], sigma, indptr, nbr, wts)

    cur[0] = d
    return stats[0] - start
