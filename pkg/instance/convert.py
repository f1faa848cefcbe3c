"""
问题转换模块

QUBO / MaxCut -> Ising 的无损转换。
- QUBO: x_i = (1 - s_i) / 2 代入，最大化问题先取负变为最小化
- MaxCut: J_ij = w_ij, h = 0，割值 = (W - E) / 2

有理系数先用 Fraction 精确计算，最后整体乘以分母的最小公倍数变为整数。
"""
import math
from fractions import Fraction
from typing import Dict, List, Tuple

from const.const import ProblemKind, Sense
from instance.models import IsingInstance, MaxCutInstance, QuboInstance


def qubo_to_ising(q: QuboInstance) -> IsingInstance:
    """
    QUBO 转伊辛模型

    Args:
        q: QUBO 实例

    Returns:
        IsingInstance: 对任意 x 及其 s = 1 - 2x，有 QUBO(x) = energy(s) (最大化时为 -energy(s))
    """
    sign = -1 if q.sense is Sense.MAX else 1
    couplings: Dict[Tuple[int, int], Fraction] = {}
    fields: List[Fraction] = [Fraction(0)] * q.n
    offset = Fraction(0)

    for i, j, value in q.entries:
        v = Fraction(value) * sign
        if v == 0:
            continue
        a, b = i - 1, j - 1
        if a == b:
            # v x = v (1 - s) / 2
            fields[a] -= v / 2
            offset += v / 2
        else:
            # v x_a x_b = v (1 - s_a - s_b + s_a s_b) / 4
            couplings[(a, b)] = couplings.get((a, b), Fraction(0)) + v / 4
            fields[a] -= v / 4
            fields[b] -= v / 4
            offset += v / 4

    scale = _common_scale(list(couplings.values()) + fields + [offset])
    J = {key: int(v * scale) for key, v in couplings.items() if v != 0}
    h = tuple(int(v * scale) for v in fields)
    raw_offset = int(offset * scale)
    # QUBO 目标 = sign * (raw + offset) / scale
    objective_map = (sign, sign * raw_offset, scale)
    return IsingInstance(q.n, J, h, raw_offset, scale, ProblemKind.QUBO, q.sense, objective_map, q.name)


def maxcut_to_ising(g: MaxCutInstance) -> IsingInstance:
    """
    最大割转伊辛模型 (无场)

    Args:
        g: 最大割实例

    Returns:
        IsingInstance: J_ij = w_ij；cut(s) = (W - energy(s)) / 2。最小割时取 J = -w。
    """
    sign = -1 if g.sense is Sense.MIN else 1
    weights = {(i - 1, j - 1): Fraction(w) for i, j, w in g.edges}
    total = sum(weights.values(), Fraction(0))

    scale = _common_scale(list(weights.values()) + [total])
    J = {key: int(w * scale) * sign for key, w in weights.items() if w != 0}
    W = int(total * scale)
    # Σ w s s = sign * raw；cut = (W - Σ w s s) / 2
    objective_map = (-sign, W, 2 * scale)
    return IsingInstance(g.n, J, (0,) * g.n, 0, scale, ProblemKind.MAXCUT, g.sense, objective_map, g.name)


def ising_from_fractions(n: int, couplings: Dict[Tuple[int, int], Fraction], fields: List[Fraction],
                         offset: Fraction = Fraction(0), sense: Sense = Sense.MIN, name: str = "") -> IsingInstance:
    """
    有理系数伊辛模型 -> 整数缩放的 IsingInstance

    Args:
        n: 自旋数
        couplings: 0 起始的 (i, j) -> J_ij，i < j
        fields: h
        offset: 常数项
        sense: 最大化时取负
        name: 实例名

    Returns:
        IsingInstance
    """
    sign = -1 if sense is Sense.MAX else 1
    values = list(couplings.values()) + list(fields) + [offset]
    scale = _common_scale(values)
    J = {key: int(Fraction(v) * scale) * sign for key, v in couplings.items() if v != 0}
    h = tuple(int(Fraction(v) * scale) * sign for v in fields)
    raw_offset = int(Fraction(offset) * scale) * sign
    objective_map = (sign, sign * raw_offset, scale)
    return IsingInstance(n, J, h, raw_offset, scale, ProblemKind.ISING, sense, objective_map, name)


def _common_scale(values: List[Fraction]) -> int:
    """所有分母的最小公倍数"""
    scale = 1
    for v in values:
        scale = scale * Fraction(v).denominator // math.gcd(scale, Fraction(v).denominator)
    return scale
