"""
求解流程

1. 全问题退火，得到初始现任解与重排序的参考赋值
2. 变量重排序 (可关闭)
3. 子问题预计算 (E 表) 与外推下界
4. 主搜索：2^{k_t} 个工作线程按 x 的前 k_t 位划分搜索树，共享现任解
5. 赋值映射回原变量顺序，重新计算能量后生成报告
"""
import time
from typing import Optional, Union

from joblib import Parallel, delayed

from bounds.hdk import BoundContext, BoundState, hdk_descend
from bounds.kh import kh_root
from const.const import BoundKind, SolveStatus
from instance.models import IsingInstance, MaxCutInstance, QuboInstance
from instance.parser import to_ising
from ordering.order import VariableOrder, build_order, value_orders
from primal.anneal import anneal
from solver.config import SolverConfig, SolverConfigError
from solver.precompute import precompute_table
from solver.report import DualTrace, SearchMonitor, SolveReport, compute_gap
from traversal.cursor import NodeCursor
from traversal.dfs import SearchResult
from traversal.hybrid import HybridEngine
from traversal.incumbent import IncumbentCell
from utils.logger import Logger

logger = Logger.get_logger()


def search_workers(ctx: BoundContext, cell: IncumbentCell, cfg: SolverConfig, deadline: Optional[float] = None,
                   monitor: Optional[SearchMonitor] = None) -> SearchResult:
    """
    并行主搜索

    工作线程 w 固定前 k_t 个变量：第 t 位为 (w >> (k_t-1-t)) & 1，比特 1 表示该变量的第二个取值，
    因此 0 号线程沿启发式偏好的路径搜索。

    Args:
        ctx: 搜索上下文 (E 表已冻结)
        cell: 共享现任解
        cfg: 配置
        deadline: 截止时间
        monitor: 接收各线程进度的对偶界采样器

    Returns:
        SearchResult: 所有工作线程的合并结果 (根节点计入节点数)
    """
    n = ctx.n
    k_t = cfg.prefix_bits
    first = value_orders(ctx.inst)
    limit = cfg.worker_frontier_limit

    def worker(w: int) -> SearchResult:
        bits = [(w >> (k_t - 1 - t)) & 1 for t in range(k_t)]
        state = BoundState.root(ctx)
        for t, b in enumerate(bits):
            hdk_descend(state, ctx, int(first[t]) if b == 0 else -int(first[t]))
        engine = HybridEngine(ctx, first, cell, limit, progress=None if monitor is None else monitor.reporter(w))
        result = engine.solve(state, NodeCursor.from_bits(bits, n), deadline)
        if k_t:
            result.nodes += 1
        logger.debug(f"Worker {w} finished: {result.nodes} nodes, complete={result.complete}")
        return result

    results = Parallel(n_jobs=cfg.threads, prefer="threads", require="sharedmem")(
        delayed(worker)(w) for w in range(cfg.threads))
    merged = SearchResult(n, nodes=1)
    for result in results:
        merged.merge(result)
    return merged


def solve(inst: Union[IsingInstance, QuboInstance, MaxCutInstance], cfg: Optional[SolverConfig] = None,
          with_table: bool = False) -> SolveReport:
    """
    精确求解

    Args:
        inst: 任意类型的实例
        cfg: 配置，默认 SolverConfig()
        with_table: 报告中附带 E 表

    Returns:
        SolveReport: status 为 optimal / timeout / infeasible-config
    """
    start = time.monotonic()
    ising = to_ising(inst)
    n = ising.n
    cfg = (cfg or SolverConfig()).clamp(n)
    report = SolveReport(ising.name, ising.kind, ising.sense.value, n, SolveStatus.INFEASIBLE_CONFIG,
                         threads=cfg.threads, config=cfg.to_dict())
    try:
        cfg.validate(n)
    except SolverConfigError as e:
        logger.error(f"Invalid configuration for {ising.name or 'instance'}: {e}")
        report.message = str(e)
        return report

    deadline = None if cfg.time_limit_s is None else start + cfg.time_limit_s
    trace = DualTrace(ising.objective_of, start)
    logger.info(f"Solving {ising.name or 'instance'} (n={n}, kind={ising.kind.value}, threads={cfg.threads}, "
                f"k_min={cfg.k_min}, bound={cfg.bound.value}, field_mode={cfg.field_mode.value})")

    # 全问题退火
    s_ref, raw = anneal(ising, cfg.anneal_full)
    t_anneal = time.monotonic()
    logger.info(f"Annealing found raw energy {raw}")

    # 重排序
    if cfg.reorder and n >= 2:
        order = build_order(ising, cfg.k_min, cfg.anneal_reorder, s_ref)
    else:
        order = VariableOrder.identity(n)
    work = order.apply(ising)
    cell = IncumbentCell(raw, order.push_forward(s_ref))
    t_order = time.monotonic()

    # E 表
    nodes_pre = 0
    table = None
    complete = True
    if cfg.bound is BoundKind.HDK:
        pre = precompute_table(work, cfg, cell, trace, deadline)
        table, nodes_pre, complete = pre.table, pre.nodes, pre.complete
    else:
        trace.record("precompute", kh_root(work, 0, with_fields=True), time.monotonic(), 0, cell.cutoff())
    t_pre = time.monotonic()

    # 主搜索
    search = SearchResult(n, complete=False)
    if complete:
        if table is not None:
            table.freeze()
        ctx = BoundContext.build(work, table, cfg.field_mode, cfg.bound)
        logger.info(f"Main search started (frontier limit {cfg.worker_frontier_limit} per worker)")
        monitor = SearchMonitor(trace, cell, cfg.threads, base_nodes=nodes_pre + 1, interval=cfg.trace_interval_s)
        search = search_workers(ctx, cell, cfg, deadline, monitor)
        logger.info(f"Main search {'finished' if search.complete else 'stopped'}: {search.nodes} nodes")
    t_search = time.monotonic()

    energy, spins = cell.snapshot()
    nodes_total = nodes_pre + search.nodes
    if search.complete:
        trace.record("search", energy, t_search, nodes_total, energy)
    elif complete:
        trace.record("search", min(search.open_bound, energy), t_search, nodes_total, energy)
    dual = min(trace.raw, energy)
    # 下界追上现任解时即使超时也已证明最优
    proven = search.complete or dual >= energy
    if not proven:
        logger.warning(f"Time limit of {cfg.time_limit_s}s reached for {ising.name or 'instance'}")
    elif not search.complete:
        logger.info(f"Dual bound met the incumbent before the time limit ran out, {ising.name or 'instance'} "
                    f"is solved")

    original = order.pull_back(spins)
    check = ising.raw_energy(original)
    if check != energy:
        raise RuntimeError(f"assignment energy {check} does not match incumbent {energy}")

    report.status = SolveStatus.OPTIMAL if proven else SolveStatus.TIMEOUT
    report.optimum = ising.objective_of(energy)
    report.energy = ising.energy_of(energy)
    report.dual = ising.objective_of(energy if proven else dual)
    report.gap = 0.0 if proven else compute_gap(ising.energy_of(energy), ising.energy_of(dual))
    report.spins = original
    report.nodes_precompute = nodes_pre
    report.nodes_total = nodes_total
    report.leaves = search.leaves
    report.pruned_at = [int(c) for c in search.pruned_at]
    report.permutation = order.to_list()
    report.dual_trace = trace.samples
    if with_table and table is not None:
        report.etable = table.to_dict()
    report.times = {
        "anneal": t_anneal - start,
        "order": t_order - t_anneal,
        "precompute": t_pre - t_order,
        "search": t_search - t_pre,
        "total": time.monotonic() - start,
    }
    logger.info(report.summary_line())
    return report
