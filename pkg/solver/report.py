"""
求解报告
"""
import threading
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from const.const import Inf, NegInf, ProblemKind, SolveStatus
from traversal.incumbent import IncumbentCell
from utils.utils import format_number, json_number

Number = Union[int, Fraction]


def compute_gap(primal: Number, dual: Number) -> float:
    """
    相对间隙 (内部最小化方向)

    Args:
        primal: 现任解能量
        dual: 下界

    Returns:
        float: (primal - dual) / max(|dual|, 1)，证明最优时为 0
    """
    primal, dual = Fraction(primal), Fraction(dual)
    if primal <= dual:
        return 0.0
    return float((primal - dual) / max(abs(dual), 1))


@dataclass
class DualSample:
    """对偶界轨迹上的一个采样"""

    phase: str  # precompute / search
    seconds: float  # 距开始的秒数
    raw: int  # 内部最小化方向的整数下界 (单调不减)
    dual: Number  # 原始方向的对偶界
    nodes: Optional[int] = None  # 采样时已计算的节点数
    primal: Optional[Number] = None  # 采样时现任解的目标值 (原始方向)

    def to_dict(self) -> Dict[str, Any]:
        return {"phase": self.phase, "seconds": round(self.seconds, 6), "raw": self.raw,
                "dual": json_number(self.dual), "nodes": self.nodes, "primal": json_number(self.primal)}


@dataclass
class SolveReport:
    """
    一次求解的完整结果

    optimum / dual 为原始问题方向与单位 (QUBO 目标、割值或伊辛能量)；
    gap 在内部最小化方向的能量上计算。
    """

    name: str  # 实例名
    kind: ProblemKind  # 问题类型
    sense: str  # min / max
    n: int  # 变量数
    status: SolveStatus  # 求解状态
    optimum: Optional[Number] = None  # 最好解的目标值
    energy: Optional[Number] = None  # 最好解的伊辛能量
    dual: Optional[Number] = None  # 对偶界 (原始方向)
    gap: Optional[float] = None  # 相对间隙
    spins: Optional[Tuple[int, ...]] = None  # 原变量顺序的自旋
    nodes_total: int = 0  # 计算过界的节点总数
    nodes_precompute: int = 0  # 其中子问题预计算的节点数
    leaves: int = 0  # 主搜索访问到的叶子
    pruned_at: List[int] = field(default_factory=list)  # 主搜索每个深度的剪枝数
    times: Dict[str, float] = field(default_factory=dict)  # 各阶段耗时(秒)
    permutation: List[int] = field(default_factory=list)  # 分支位置 -> 原变量 (1 起始)
    threads: int = 1  # 线程数
    etable: Optional[Dict[int, Number]] = None  # E 表 (可选)
    dual_trace: List[DualSample] = field(default_factory=list)  # 对偶界轨迹
    config: Dict[str, Any] = field(default_factory=dict)  # 使用的配置
    message: str = ""  # 附加信息

    @property
    def optimal(self) -> bool:
        return self.status is SolveStatus.OPTIMAL

    @property
    def wall(self) -> float:
        return self.times.get("total", 0.0)

    def assignment(self) -> Dict[str, Any]:
        """原始问题形式的解"""
        if self.spins is None:
            return {}
        out: Dict[str, Any] = {"spins": list(self.spins)}
        if self.kind is ProblemKind.QUBO:
            out["binary"] = [(1 - s) // 2 for s in self.spins]
        elif self.kind is ProblemKind.MAXCUT:
            out["cut"] = [i + 1 for i, s in enumerate(self.spins) if s < 0]
        return out

    def to_dict(self) -> Dict[str, Any]:
        """JSON 输出 (字段名稳定)"""
        data = {
            "name": self.name,
            "kind": self.kind.value,
            "sense": self.sense,
            "n": self.n,
            "status": self.status.value,
            "optimum": json_number(self.optimum),
            "energy": json_number(self.energy),
            "dual": json_number(self.dual),
            "gap": self.gap,
            "assignment": self.assignment(),
            "nodes_total": self.nodes_total,
            "nodes_precompute": self.nodes_precompute,
            "leaves": self.leaves,
            "pruned_at": self.pruned_at,
            "times": {k: round(v, 6) for k, v in self.times.items()},
            "threads": self.threads,
            "permutation": self.permutation,
            "dual_trace": [s.to_dict() for s in self.dual_trace],
            "config": self.config,
        }
        if self.etable is not None:
            data["etable"] = {str(k): json_number(v) for k, v in self.etable.items()}
        if self.message:
            data["message"] = self.message
        return data

    def summary_line(self) -> str:
        """一行摘要"""
        optimum = "-" if self.optimum is None else format_number(self.optimum)
        dual = "-" if self.dual is None else format_number(self.dual)
        gap = "-" if self.gap is None else f"{self.gap:.6g}"
        return (f"{self.name or 'instance'} n={self.n} {self.status.value} optimum={optimum} dual={dual} "
                f"gap={gap} nodes={self.nodes_total} wall={self.wall:.3f}s threads={self.threads}")


class DualTrace:
    """单调不减的对偶界轨迹"""

    def __init__(self, to_objective, start: float):
        """
        Args:
            to_objective: 整数能量 -> 原始目标值
            start: 开始时间 (time.monotonic)
        """
        self._to_objective = to_objective
        self._start: float = start
        self.samples: List[DualSample] = []  # 采样
        self.raw: Optional[int] = None  # 当前整数下界

    def record(self, phase: str, raw: int, now: float, nodes: Optional[int] = None,
               primal: Optional[int] = None) -> int:
        """
        记录一个下界，返回取最大后的当前下界

        Args:
            phase: 阶段名
            raw: 整数下界
            now: 当前时间 (time.monotonic)
            nodes: 已计算的节点数
            primal: 现任解的整数能量

        Returns:
            int: 当前下界
        """
        raw = int(raw)
        if self.raw is not None and raw <= self.raw:
            return self.raw
        self.raw = raw
        objective = None if primal is None else self._to_objective(primal)
        self.samples.append(DualSample(phase, now - self._start, raw, self._to_objective(raw), nodes, objective))
        return raw


class SearchMonitor:
    """
    主搜索期间的全局对偶界

    每个工作线程报告自己子树中未搜索部分的下界 (报告前已发布找到的解)，
    全局下界为 min(各线程的报告, 现任解)。尚未报告的线程记为 NegInf。
    """

    def __init__(self, trace: DualTrace, cell: IncumbentCell, workers: int, base_nodes: int = 0,
                 interval: float = 1.0):
        """
        Args:
            trace: 对偶界轨迹
            cell: 共享现任解
            workers: 工作线程数
            base_nodes: 主搜索之前已计算的节点数
            interval: 两次采样之间的最短秒数，0 表示每次报告都采样
        """
        self.trace: DualTrace = trace  # 对偶界轨迹
        self.cell: IncumbentCell = cell  # 共享现任解
        self.bounds: np.ndarray = np.full(workers, NegInf, dtype=np.int64)  # 每个线程的开放界
        self.nodes: np.ndarray = np.zeros(workers, dtype=np.int64)  # 每个线程的节点数
        self.base_nodes: int = base_nodes  # 主搜索之前的节点数
        self.interval: float = interval  # 采样间隔(秒)
        self._last: Optional[float] = None
        self._lock = threading.Lock()

    def reporter(self, worker: int) -> Callable[[int, int], None]:
        """工作线程 worker 的回调 (open_bound, nodes)"""
        return lambda open_bound, nodes: self.update(worker, open_bound, nodes)

    def lower_bound(self) -> int:
        """当前全局下界 (有线程尚未报告时为 NegInf)"""
        return min(int(self.bounds.min()), self.cell.cutoff())

    def update(self, worker: int, open_bound: int, nodes: int):
        """
        记录一个线程的报告，距上次采样超过 interval 时写入轨迹

        Args:
            worker: 线程编号
            open_bound: 该线程未搜索部分的下界 (完成时为 Inf)
            nodes: 该线程已计算的节点数
        """
        now = time.monotonic()
        with self._lock:
            self.bounds[worker] = open_bound
            self.nodes[worker] = nodes
            if self._last is not None and now - self._last < self.interval:
                return
            lower = self.lower_bound()
            if lower == NegInf or lower == Inf:
                return
            self._last = now
            primal = self.cell.cutoff()
            self.trace.record("search", lower, now, self.base_nodes + int(self.nodes.sum()),
                              None if primal == Inf else primal)
