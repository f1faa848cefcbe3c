"""
测试公共设施

- exhaustive_minimum: 与求解器无关的 itertools 暴力枚举 (n <= 12)
- random_ising: 小规模随机实例工厂
- --runslow: 运行标记为 slow 的桌面规模测试
"""
import itertools
import os

# 测试时不写日志文件
os.environ.setdefault("SPINBOUND_LOG_DIR", "")

import pytest  # noqa: E402

from instance.generator import generate_random  # noqa: E402

RESOURCE_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "resource", "instances")


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow acceptance tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def exhaustive(inst):
    """所有赋值的 (整数能量, 自旋) 列表"""
    rows = []
    for spins in itertools.product((-1, 1), repeat=inst.n):
        total = 0
        for (i, j), v in inst.couplings.items():
            total += v * spins[i] * spins[j]
        for i, v in enumerate(inst.fields):
            total += v * spins[i]
        rows.append((total, spins))
    return rows


def exhaustive_minimum(inst):
    """最小整数能量 (不含 offset)"""
    return min(energy for energy, _ in exhaustive(inst))


def completion_minimum(inst, prefix):
    """固定前缀后所有补全的最小整数能量"""
    k = len(prefix)
    best = None
    for energy, spins in exhaustive(inst):
        if tuple(spins[:k]) == tuple(prefix) and (best is None or energy < best):
            best = energy
    return best


@pytest.fixture
def oracle():
    return exhaustive_minimum


@pytest.fixture
def completions():
    return completion_minimum


@pytest.fixture
def random_ising():
    """random_ising(n, seed, cls='uniform', density=0.7) -> IsingInstance (系数在 (-10, 10))"""

    def make(n, seed, cls="uniform", density=0.7):
        return generate_random(n, cls, density, seed, lo=-10, hi=10)

    return make


@pytest.fixture
def resource_file():
    """resource/instances 下的实例文件，不存在时跳过"""

    def find(name):
        path = os.path.join(RESOURCE_DIR, name)
        if not os.path.exists(path):
            pytest.skip(f"{name} not found under resource/instances")
        return path

    return find


def exact_table(inst, k_min, mode):
    """用暴力枚举填满 E 表"""
    from bounds.table import SubproblemTable

    table = SubproblemTable.build(inst, k_min, mode)
    for l in table.dimensions():
        table.record(l, exhaustive_minimum(inst.subproblem(inst.n - l, keep_fields=not mode.omit())))
    return table
