"""
numba 加速

内层循环 (界更新、DFS、模拟退火、暴力枚举) 用 @njit(cache=True, nogil=True) 编译，
nogil 让 joblib 线程池里的工作线程真正并行。
没有安装 numba 时退化为普通 Python 函数 (结果相同，只是很慢)；
调试时也可以设置 NUMBA_DISABLE_JIT=1。
"""
import warnings

try:
    from numba import njit
    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    HAS_NUMBA = False
    warnings.warn("did not import numba, kernels run as plain python and will be slow")

    def njit(*args, **kwargs):
        """numba.njit 的替身，什么也不做"""
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def decorator(func):
            return func

        return decorator

KERNEL = dict(cache=True, nogil=True)
