"""
求解器配置

SolverConfig.from_config(ConfigYaml().get('solver'), **overrides)，命令行参数作为 overrides。
"""
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Dict, Optional

from const.const import BoundKind, FieldMode, FrontierEntryOverhead
from primal.anneal import AnnealSchedule
from utils.logger import Logger

logger = Logger.get_logger()


class SolverConfigError(ValueError):
    """配置无效"""


@dataclass(frozen=True)
class SolverConfig:
    """求解器配置"""

    k_min: int = 20  # 顶部使用 KH 根界的层数
    frontier_limit: int = 100000  # 前沿上限
    threads: int = 1  # 线程数，2 的幂
    field_mode: FieldMode = FieldMode.KEEP  # 局部场模式
    bound: BoundKind = BoundKind.HDK  # 对偶界类型
    reorder: bool = True  # 是否重排序
    time_limit_s: Optional[float] = None  # 时间限制
    seed: int = 0  # 随机种子
    memory_cap_mb: float = 2048  # 前沿内存上限
    trace_interval_s: float = 1.0  # 主搜索对偶界采样间隔(秒)
    anneal_full: AnnealSchedule = field(default_factory=lambda: AnnealSchedule(1000, 4))  # 全问题退火
    anneal_subproblem: AnnealSchedule = field(default_factory=lambda: AnnealSchedule(100, 1))  # 子问题退火
    anneal_reorder: AnnealSchedule = field(default_factory=lambda: AnnealSchedule(10, 1))  # 重排序退火

    @classmethod
    def from_config(cls, config: Optional[Dict[str, Any]] = None, **overrides) -> "SolverConfig":
        """
        由配置字典构造

        Args:
            config: solver 配置段
            **overrides: 覆盖项 (值为 None 的忽略)

        Returns:
            SolverConfig

        Raises:
            SolverConfigError: 取值无效
        """
        config = dict(config or {})
        config.update({k: v for k, v in overrides.items() if v is not None})
        seed = int(config.get('seed', 0) or 0)
        anneal = config.get('anneal') or {}
        try:
            cfg = cls(
                k_min=int(config.get('k_min', 20)),
                frontier_limit=int(config.get('frontier_limit', 100000)),
                threads=int(config.get('threads', 1)),
                field_mode=FieldMode(config.get('field_mode', 'keep')),
                bound=BoundKind(config.get('bound', 'hdk')),
                reorder=bool(config.get('reorder', True)),
                time_limit_s=None if config.get('time_limit_s') is None else float(config['time_limit_s']),
                seed=seed,
                memory_cap_mb=float(config.get('memory_cap_mb', 2048)),
                trace_interval_s=float(config.get('trace_interval_s', 1.0)),
                anneal_full=AnnealSchedule.from_config(anneal.get('full', {'sweeps': 1000, 'restarts': 4}), seed),
                anneal_subproblem=AnnealSchedule.from_config(anneal.get('subproblem', {'sweeps': 100}), seed),
                anneal_reorder=AnnealSchedule.from_config(anneal.get('reorder', {'sweeps': 10}), seed),
            )
        except (TypeError, ValueError) as e:
            raise SolverConfigError(str(e)) from None
        cfg.validate()
        return cfg

    def validate(self, n: Optional[int] = None):
        """
        检查取值

        Args:
            n: 实例维度，给定时检查线程数与内存

        Raises:
            SolverConfigError
        """
        if self.threads < 1 or self.threads & (self.threads - 1):
            raise SolverConfigError(f"threads must be a power of two, got {self.threads}")
        if self.k_min < 0:
            raise SolverConfigError(f"k_min must be non-negative, got {self.k_min}")
        if self.frontier_limit < 1:
            raise SolverConfigError(f"frontier_limit must be at least 1, got {self.frontier_limit}")
        if self.time_limit_s is not None and self.time_limit_s <= 0:
            raise SolverConfigError(f"time_limit_s must be positive, got {self.time_limit_s}")
        if self.trace_interval_s < 0:
            raise SolverConfigError(f"trace_interval_s must be non-negative, got {self.trace_interval_s}")
        if n is None:
            return
        if self.prefix_bits > n:
            raise SolverConfigError(f"{self.threads} threads need {self.prefix_bits} prefix bits, n={n}")
        need = self.frontier_memory_mb(n)
        if need > self.memory_cap_mb:
            raise SolverConfigError(f"frontier_limit {self.frontier_limit} needs about {need:.0f} MB, "
                                    f"cap is {self.memory_cap_mb:.0f} MB")

    @property
    def prefix_bits(self) -> int:
        """k_t = log2(threads)"""
        return self.threads.bit_length() - 1

    @property
    def worker_frontier_limit(self) -> int:
        """每个工作线程的前沿上限"""
        return max(1, self.frontier_limit // self.threads)

    def frontier_memory_mb(self, n: int) -> float:
        """前沿最坏情况内存 (σ 与自旋各 n 个 int64)"""
        per_entry = 2 * n * 8 + FrontierEntryOverhead
        return self.frontier_limit * per_entry / (1 << 20)

    def clamp(self, n: int) -> "SolverConfig":
        """k_min 超过 n-2 时截断"""
        top = max(n - 2, 0)
        if self.k_min > top:
            logger.debug(f"Clamping k_min {self.k_min} to {top} for n={n}")
            return replace(self, k_min=top)
        return self

    def to_dict(self) -> Dict[str, Any]:
        """JSON / 配置哈希用"""
        data = asdict(self)
        data['field_mode'] = self.field_mode.value
        data['bound'] = self.bound.value
        return data
