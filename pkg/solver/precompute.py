"""
子问题预计算

按维度升序求解尾部子问题 l = 2..n-k_min-1：
- 上一个子问题的最优解贪心扩展后作为退火初值
- 退火结果作为现任解，DFS 用已有的 E 表求出精确最优
- 最优解贪心扩展到全问题，作为全问题的现任解候选
- 最优值外推为全问题的下界
"""
import time
from dataclasses import dataclass, field, replace
from typing import Optional

from bounds.hdk import BoundContext, extrapolate_global_bound
from bounds.kh import kh_root
from bounds.table import SubproblemTable
from const.const import BoundKind, Inf
from instance.models import IsingInstance
from primal.anneal import anneal
from primal.greedy import greedy_extend
from solver.config import SolverConfig
from solver.report import DualTrace
from traversal.dfs import dfs_solve
from traversal.incumbent import IncumbentCell
from utils.logger import Logger

logger = Logger.get_logger()


@dataclass
class PrecomputeResult:
    """预计算结果"""

    table: SubproblemTable  # E 表
    nodes: int = 0  # 子问题搜索的节点总数
    complete: bool = True  # 是否全部求解
    solved: list = field(default_factory=list)  # 已求解的维度


def precompute_table(inst: IsingInstance, cfg: SolverConfig, cell: Optional[IncumbentCell] = None,
                     trace: Optional[DualTrace] = None, deadline: Optional[float] = None) -> PrecomputeResult:
    """
    计算 E 表

    Args:
        inst: 已重排的全问题
        cfg: 求解器配置 (k_min 已截断)
        cell: 全问题现任解，用于接收扩展后的子问题解
        trace: 全问题对偶界轨迹
        deadline: 截止时间

    Returns:
        PrecomputeResult: 超时时 complete=False，表中只有已完成的维度
    """
    n = inst.n
    mode = cfg.field_mode
    table = SubproblemTable.build(inst, cfg.k_min, mode)
    result = PrecomputeResult(table)
    def sample(raw: int):
        primal = Inf if cell is None else cell.cutoff()
        trace.record("precompute", raw, time.monotonic(), result.nodes, None if primal == Inf else primal)

    if trace is not None:
        sample(kh_root(inst, 0, with_fields=True))

    previous = None
    for l in table.dimensions():
        if deadline is not None and time.monotonic() >= deadline:
            result.complete = False
            logger.warning(f"Time limit reached during precompute at dimension {l}")
            break

        start = n - l
        sub = inst.subproblem(start, keep_fields=not mode.omit())
        init = None if previous is None else greedy_extend(sub, previous).spins
        spins, raw = anneal(sub, replace(cfg.anneal_subproblem, seed=cfg.seed + l), init)
        sub_cell = IncumbentCell(raw, spins)

        ctx = BoundContext.build(sub, table, mode, BoundKind.HDK)
        search = dfs_solve(ctx, sub_cell, deadline=deadline)
        result.nodes += search.nodes
        if not search.complete:
            result.complete = False
            if trace is not None:
                partial = min(search.open_bound, sub_cell.energy)
                sample(extrapolate_global_bound(partial, inst, start, mode))
            logger.warning(f"Time limit reached while solving subproblem of dimension {l}")
            break

        energy, previous = sub_cell.snapshot()
        table.record(l, energy)
        result.solved.append(l)

        if cell is not None:
            extended = greedy_extend(inst, previous).spins
            cell.offer(inst.raw_energy(extended), extended)
        if trace is not None:
            sample(extrapolate_global_bound(energy, inst, start, mode))
        logger.debug(f"E_{l} = {energy} ({search.nodes} nodes)")

    logger.info(f"Precomputed {len(result.solved)} subproblems ({result.nodes} nodes)")
    return result
