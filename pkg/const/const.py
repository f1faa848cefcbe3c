# 常量
from enum import Enum

# 系数绝对值总和上限 (Σ|J| + Σ|h|)，保证 int64 界计算不溢出
CoefficientGuard: int = 1 << 62

# 无穷大哨兵 (int64 最大值)
Inf: int = (1 << 63) - 1

# 尚未报告的下界 (int64 最小值)
NegInf: int = -(1 << 63)

# 每次内核调用最多访问的节点数 (超时/现任解发布的检查间隔)
ChunkNodes: int = 1 << 14

# 暴力枚举的最大变量数
BruteForceMaxN: int = 26

# 前沿节点估算的固定开销(字节)
FrontierEntryOverhead: int = 160


class ProblemKind(Enum):
    """ 问题类型 """
    QUBO: str = "qubo"  # 二次无约束二值优化
    MAXCUT: str = "maxcut"  # 最大割
    ISING: str = "ising"  # 伊辛模型

    @staticmethod
    def parse(value: str) -> "ProblemKind":
        """字符串转类型"""
        return ProblemKind(value.lower())


class Sense(Enum):
    """ 优化方向 """
    MIN: str = "min"  # 最小化
    MAX: str = "max"  # 最大化


class FieldMode(Enum):
    """ 局部场模式 """
    OMIT: str = "omit"  # 模式1：子问题中去掉 h，h 进入绝对值项
    KEEP: str = "keep"  # 模式2：子问题保留 h

    def omit(self) -> bool:
        """是否在子问题中去掉局部场"""
        return self is FieldMode.OMIT


class BoundKind(Enum):
    """ 对偶界类型 """
    HDK: str = "hdk"  # Hartwig-Daske-Kobe 界
    KH: str = "kh"  # Kobe-Hartwig 界


class SolveStatus(Enum):
    """ 求解状态 """
    OPTIMAL: str = "optimal"  # 已证明最优
    TIMEOUT: str = "timeout"  # 超时
    INFEASIBLE_CONFIG: str = "infeasible-config"  # 配置无效
    ERROR: str = "error"  # 运行错误 (仅 bench 行)


class GeneratorClass(Enum):
    """ 随机实例类别 """
    SK: str = "sk"  # Sherrington-Kirkpatrick ±1
    UNIFORM: str = "uniform"  # 均匀整数 (lo, hi)
    GRID2D: str = "grid2d"  # 二维格点
    GRID3D: str = "grid3d"  # 三维格点


class ExitCode:
    """命令行退出码"""

    Ok = 0  # 最优 / 验证通过
    Error = 1  # 错误
    Timeout = 2  # 超时
