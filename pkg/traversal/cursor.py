"""
整数编码的搜索树节点

节点为 (x, d)：前 d 个变量已赋值，变量 t 对应 x 的第 n-1-t 位 (变量 0 为最高位)，
低于 n-d 位的比特恒为 0。比特 0 表示该变量的第一个取值，比特 1 表示第二个取值；
不给定取值顺序时第一个取值为 +1，即 a_t = (-1)^bit。

跳过当前子树就是给 x 加 2^{n-d}：自然进位回到下一个未访问的兄弟或祖先兄弟，
x 溢出到 2^n 时整棵树已遍历完。
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple


@dataclass(frozen=True, order=True)
class NodeCursor:
    """搜索树节点 (x, d)"""

    x: int  # n 位无符号整数 (Python int，不受 64 位限制)
    d: int  # 深度 0..n
    n: int  # 变量数

    def __post_init__(self):
        if not 0 <= self.d <= self.n:
            raise ValueError(f"depth {self.d} outside 0..{self.n}")
        if self.x < 0 or self.x >> self.n:
            raise ValueError(f"x={self.x} is not an {self.n}-bit integer")
        if self.x & ((1 << (self.n - self.d)) - 1):
            raise ValueError(f"x={self.x:b} has bits below depth {self.d}")

    @classmethod
    def root(cls, n: int) -> "NodeCursor":
        return cls(0, 0, n)

    @classmethod
    def from_bits(cls, bits: Sequence[int], n: int) -> "NodeCursor":
        """由前 d 个变量的比特构造"""
        x = 0
        for t, b in enumerate(bits):
            x |= int(b) << (n - 1 - t)
        return cls(x, len(bits), n)

    def bit(self, t: int) -> int:
        """变量 t 的比特"""
        if t >= self.d:
            raise IndexError(f"variable {t} is not assigned at depth {self.d}")
        return (self.x >> (self.n - 1 - t)) & 1

    def bits(self) -> Tuple[int, ...]:
        return tuple(self.bit(t) for t in range(self.d))

    def child(self, bit: int) -> "NodeCursor":
        """给变量 d 赋比特 bit"""
        if self.d >= self.n:
            raise IndexError("a leaf has no children")
        return NodeCursor(self.x | (bit << (self.n - 1 - self.d)), self.d + 1, self.n)

    def assignment(self, first: Optional[Sequence[int]] = None) -> Tuple[int, ...]:
        """
        已赋值部分的自旋

        Args:
            first: 每个变量的第一个取值，默认全为 +1

        Returns:
            tuple: s_0..s_{d-1}
        """
        values = []
        for t in range(self.d):
            f = 1 if first is None else int(first[t])
            values.append(f if self.bit(t) == 0 else -f)
        return tuple(values)


def skip_subtree(c: NodeCursor) -> Optional[NodeCursor]:
    """
    跳过以 c 为根的子树

    Args:
        c: 节点，0 < d <= n

    Returns:
        NodeCursor | None: DFS 顺序中的下一个未访问节点；整棵树遍历完时返回 None
    """
    if c.d == 0:
        return None
    x = c.x + (1 << (c.n - c.d))
    if x >> c.n:
        return None
    lowest = (x & -x).bit_length() - 1
    return NodeCursor(x, c.n - lowest, c.n)


def descend_leftmost(c: NodeCursor) -> NodeCursor:
    """沿第一个取值一直下降到叶子"""
    return NodeCursor(c.x, c.n, c.n)
