"""
基准测试

清单 (YAML)：
```yaml
solver:               # 可选，覆盖求解器配置
  k_min: 10
instances:
  - path: resource/instances/bqp50-1.sparse
    kind: qubo
    sense: min
  - generate: {class: sk, n: [20, 24, 28, 32], seeds: [0, 1, 2], density: 1.0}
```
每个 (实例, 配置) 一行 BenchRow；单个实例失败时记录在行内并继续。
CSV 列顺序固定为 BENCH_COLUMNS，JSON 与 CSV 字段一一对应。
"""
import math
import os
import time
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
import yaml
from joblib import Parallel, delayed
from scipy.stats import linregress

from const.const import GeneratorClass, SolveStatus
from instance.generator import generate_random
from instance.parser import read_instance
from solver.config import SolverConfig
from solver.solver import solve
from utils.logger import Logger
from utils.utils import config_hash, dump_json, json_number

logger = Logger.get_logger()

BENCH_COLUMNS = ["name", "n", "class", "optimum", "dual", "gap", "status", "nodes", "wall", "threads",
                 "config_hash", "error"]


class ManifestError(ValueError):
    """清单格式错误"""


@dataclass
class BenchEntry:
    """清单中的一个实例"""

    name: str  # 实例名
    cls: str  # 类别 (文件类型或生成类别)
    path: Optional[str] = None  # 实例文件
    kind: str = "qubo"  # 文件类型
    sense: str = "min"  # 优化方向
    generate: Optional[Dict[str, Any]] = None  # 生成参数 {class, n, seed, density}

    def load(self):
        """读取或生成实例"""
        if self.path is not None:
            return read_instance(self.path, self.kind, self.sense)
        params = self.generate
        return generate_random(int(params['n']), params['class'], float(params.get('density', 1.0)),
                               int(params.get('seed', 0)), name=self.name)


@dataclass
class BenchRow:
    """一行基准结果"""

    name: str  # 实例名
    n: Optional[int]  # 变量数
    cls: str  # 类别
    optimum: Any = None  # 目标值
    dual: Any = None  # 对偶界
    gap: Optional[float] = None  # 间隙
    status: str = SolveStatus.ERROR.value  # 状态
    nodes: int = 0  # 节点数
    wall: float = 0.0  # 耗时(秒)
    threads: int = 1  # 线程数
    config_hash: str = ""  # 配置哈希
    error: str = ""  # 错误信息

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['class'] = data.pop('cls')
        data['optimum'] = json_number(self.optimum)
        data['dual'] = json_number(self.dual)
        return {key: data[key] for key in BENCH_COLUMNS}


def load_manifest(path: str) -> Tuple[List[BenchEntry], Dict[str, Any]]:
    """
    读取清单

    Args:
        path: YAML 文件

    Returns:
        (entries, solver_overrides)

    Raises:
        ManifestError: 不是合法的 YAML 映射或条目无效
    """
    with open(path, 'r', encoding='utf-8') as f:
        try:
            manifest = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ManifestError(f"{path} is not valid YAML: {e}") from None
    if not isinstance(manifest, dict):
        raise ManifestError(f"{path} must contain a mapping with an 'instances' list")
    base = os.path.dirname(os.path.abspath(path))
    return parse_manifest(manifest, base), manifest.get('solver') or {}


def parse_manifest(manifest: Dict[str, Any], base: str = ".") -> List[BenchEntry]:
    """清单字典 -> BenchEntry 列表 (生成项按 n × seeds 展开)"""
    entries = []
    for item in manifest.get('instances') or []:
        try:
            entries.extend(parse_item(item, base))
        except ManifestError:
            raise
        except (AttributeError, KeyError, TypeError, ValueError) as e:
            raise ManifestError(f"invalid manifest entry {item}: {e}") from None
    return entries


def parse_item(item: Dict[str, Any], base: str) -> List[BenchEntry]:
    """一个清单条目 -> BenchEntry 列表"""
    if not isinstance(item, dict):
        raise ManifestError(f"manifest entry must be a mapping: {item}")
    if 'path' in item:
        path = item['path'] if os.path.isabs(item['path']) else os.path.join(base, item['path'])
        if not os.path.exists(path) and os.path.exists(item['path']):
            path = item['path']
        kind = item.get('kind', 'qubo')
        return [BenchEntry(item.get('name', os.path.basename(path)), kind, path, kind,
                           item.get('sense', 'max' if kind == 'maxcut' else 'min'))]
    params = dict(item.get('generate') or {})
    if 'class' not in params or 'n' not in params:
        raise ManifestError(f"manifest entry needs 'path' or 'generate' with class and n: {item}")
    cls = GeneratorClass(params['class']).value
    sizes = params['n'] if isinstance(params['n'], list) else [params['n']]
    seeds = params.get('seeds', [params.get('seed', 0)])
    density = float(params.get('density', 1.0))
    entries = []
    for n in sizes:
        for seed in seeds:
            gen = {'class': cls, 'n': int(n), 'seed': int(seed), 'density': density}
            entries.append(BenchEntry(f"{cls}-n{n}-s{seed}", cls, generate=gen))
    return entries


def run_entry(entry: BenchEntry, cfg: SolverConfig) -> BenchRow:
    """
    运行一个实例 (异常记录在行内)

    Args:
        entry: 实例
        cfg: 配置

    Returns:
        BenchRow
    """
    row = BenchRow(entry.name, None, entry.cls, threads=cfg.threads, config_hash=config_hash(cfg.to_dict()))
    start = time.monotonic()
    try:
        inst = entry.load()
        row.n = inst.n
        report = solve(inst, cfg)
        row.optimum = report.optimum
        row.dual = report.dual
        row.gap = report.gap
        row.status = report.status.value
        row.nodes = report.nodes_total
        row.error = report.message
    except Exception as e:
        logger.error(f"Bench entry {entry.name} failed: {e}")
        row.status = SolveStatus.ERROR.value
        row.error = f"{type(e).__name__}: {e}"
    row.wall = time.monotonic() - start
    return row


def run_bench(entries: List[BenchEntry], cfg: SolverConfig, parallel_instances: int = 1) -> List[BenchRow]:
    """
    运行全部实例

    Args:
        entries: 实例列表
        cfg: 配置
        parallel_instances: 并行实例数 (>1 时使用进程池)

    Returns:
        list: BenchRow，与 entries 同序
    """
    logger.info(f"Running bench with {len(entries)} instances")
    if not entries:
        return []
    if parallel_instances > 1:
        return list(Parallel(n_jobs=parallel_instances)(delayed(run_entry)(entry, cfg) for entry in entries))
    rows = []
    for entry in entries:
        row = run_entry(entry, cfg)
        logger.info(f"{row.name}: {row.status} optimum={row.optimum} nodes={row.nodes} wall={row.wall:.3f}s")
        rows.append(row)
    return rows


def to_frame(rows: List[BenchRow]) -> pd.DataFrame:
    """结果表 (列顺序固定)"""
    return pd.DataFrame([row.to_dict() for row in rows], columns=BENCH_COLUMNS)


def write_csv(rows: List[BenchRow], path: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    to_frame(rows).to_csv(path, index=False)
    logger.info(f"Wrote {len(rows)} bench rows to {path}")


def write_json(rows: List[BenchRow], path: Optional[str] = None) -> str:
    return dump_json([row.to_dict() for row in rows], path)


def fit_exponent(rows: List[BenchRow], cls: Optional[str] = GeneratorClass.SK.value) -> Dict[str, float]:
    """
    拟合 nodes ≈ 2^{αn + β}

    Args:
        rows: 结果行 (只使用已证明最优的行)
        cls: 只使用该类别的行，None 表示全部

    Returns:
        dict: {slope, intercept, rvalue, count}

    Raises:
        ValueError: 少于两个不同的 n
    """
    frame = to_frame(rows)
    frame = frame[(frame['status'] == SolveStatus.OPTIMAL.value) & (frame['nodes'] > 0)]
    if cls is not None:
        frame = frame[frame['class'] == cls]
    if frame['n'].nunique() < 2:
        raise ValueError("exponent fit needs solved rows with at least two distinct n")
    fit = linregress(frame['n'].astype(float), np.log2(frame['nodes'].astype(float)))
    return {"slope": float(fit.slope), "intercept": float(fit.intercept), "rvalue": float(fit.rvalue),
            "count": int(len(frame))}


def median_nodes(rows: List[BenchRow]) -> Dict[int, float]:
    """每个 n 的节点数中位数 (KH / HDK 对比用)"""
    frame = to_frame(rows)
    frame = frame[frame['status'] == SolveStatus.OPTIMAL.value]
    if frame.empty:
        return {}
    medians = frame.groupby('n')['nodes'].median()
    return {int(n): float(v) for n, v in medians.items() if not math.isnan(v)}
