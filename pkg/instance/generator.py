"""
随机实例生成模块

类别：
- sk:      完全图，J_ij = ±1 等概率，h = 0
- uniform: 每对变量以 density 概率保留，J_ij、h_i 为 (lo, hi) 内的非零均匀整数
- grid2d:  L×L 开边界格点，最近邻 J = ±1
- grid3d:  L×L×L 开边界格点，最近邻 J = ±1

同一组参数与种子总是生成完全相同的实例。
"""
from typing import List, Optional, Tuple, Union

import numpy as np

from const.const import GeneratorClass, ProblemKind
from instance.errors import GeneratorError
from instance.models import IsingInstance


def generate_random(n: int, cls: Union[GeneratorClass, str] = GeneratorClass.UNIFORM,
                    density: float = 1.0, seed: int = 0, lo: int = -100, hi: int = 100,
                    name: Optional[str] = None) -> IsingInstance:
    """
    生成随机伊辛实例

    Args:
        n: 自旋数 (>= 2)
        cls: 类别 sk | uniform | grid2d | grid3d
        density: 边密度 (0, 1]，仅 uniform 使用
        seed: 随机种子
        lo: uniform 下界 (不含)
        hi: uniform 上界 (不含)
        name: 实例名

    Returns:
        IsingInstance
    """
    try:
        cls = GeneratorClass(cls) if not isinstance(cls, GeneratorClass) else cls
    except ValueError:
        raise GeneratorError(f"unknown instance class {cls!r}") from None
    if n < 2:
        raise GeneratorError(f"n must be at least 2, got {n}")
    if not (0 < density <= 1):
        raise GeneratorError(f"density must be in (0, 1], got {density}")

    rng = np.random.default_rng(seed)
    fields = [0] * n

    if cls is GeneratorClass.SK:
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        signs = rng.choice(np.array([-1, 1], dtype=np.int64), size=len(pairs))
        couplings = {pair: int(v) for pair, v in zip(pairs, signs)}
    elif cls is GeneratorClass.UNIFORM:
        values = _nonzero_range(lo, hi)
        couplings = {}
        for i in range(n):
            for j in range(i + 1, n):
                if density >= 1 or rng.random() < density:
                    couplings[(i, j)] = int(rng.choice(values))
        fields = [int(v) for v in rng.choice(values, size=n)]
    else:
        edges = _lattice_edges(n, 2 if cls is GeneratorClass.GRID2D else 3)
        signs = rng.choice(np.array([-1, 1], dtype=np.int64), size=len(edges))
        couplings = {edge: int(v) for edge, v in zip(edges, signs)}

    label = name or f"{cls.value}-n{n}-s{seed}"
    return IsingInstance(n, couplings, tuple(fields), kind=ProblemKind.ISING, name=label)


def _nonzero_range(lo: int, hi: int) -> np.ndarray:
    """(lo, hi) 开区间内的非零整数"""
    if lo >= hi:
        raise GeneratorError(f"invalid range ({lo}, {hi})")
    values = np.array([v for v in range(lo + 1, hi) if v != 0], dtype=np.int64)
    if values.size == 0:
        raise GeneratorError(f"range ({lo}, {hi}) contains no nonzero integer")
    return values


def _lattice_edges(n: int, dim: int) -> List[Tuple[int, int]]:
    """开边界超立方格点的最近邻边"""
    side = int(round(n ** (1.0 / dim)))
    if side ** dim != n:
        raise GeneratorError(f"n={n} is not a perfect {'square' if dim == 2 else 'cube'}")
    edges = []
    for index in range(n):
        coords = np.unravel_index(index, (side,) * dim)
        for axis in range(dim):
            if coords[axis] + 1 < side:
                neighbor = list(coords)
                neighbor[axis] += 1
                edges.append((index, int(np.ravel_multi_index(neighbor, (side,) * dim))))
    return sorted(edges)

