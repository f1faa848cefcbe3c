"""
实例文件解析模块

BiqMac 风格的稀疏文本格式：
- 以 '#' 开头的行为注释 (跳过)
- 第一条非注释行为 "n m"
- 之后 m 行 "i j value"，下标从 1 开始，value 为十进制整数或小数

三种类型：
- qubo:   (i, j, Q_ij)，i == j 为线性项
- maxcut: (i, j, w_ij) 无向边
- ising:  i < j 为耦合 J_ij，i == j 为场 h_i；可选指令行 "# offset v"
"""
import os
import re
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, TextIO, Tuple, Union

from const.const import ProblemKind, Sense
from instance.convert import ising_from_fractions, maxcut_to_ising, qubo_to_ising
from instance.errors import (DuplicateEntryError, EntryCountError, HeaderError, IndexRangeError,
                             ParseError, ValueFormatError)
from instance.models import IsingInstance, MaxCutInstance, QuboInstance
from utils.logger import Logger

logger = Logger.get_logger()

ParsedInstance = Union[QuboInstance, MaxCutInstance, IsingInstance]

_DECIMAL = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")
_OFFSET = re.compile(r"^#\s*offset\s+(\S+)\s*$")


def parse_instance(text: Union[str, TextIO, Iterable[str]], kind: Union[ProblemKind, str] = ProblemKind.QUBO,
                   sense: Union[Sense, str] = Sense.MIN, name: str = "") -> ParsedInstance:
    """
    解析稀疏文本实例

    Args:
        text: 文本内容 / 文件对象 / 行迭代器
        kind: qubo | maxcut | ising
        sense: min | max
        name: 实例名

    Returns:
        QuboInstance | MaxCutInstance | IsingInstance

    Raises:
        HeaderError, ValueFormatError, IndexRangeError, DuplicateEntryError, EntryCountError
    """
    kind = ProblemKind(kind) if not isinstance(kind, ProblemKind) else kind
    sense = Sense(sense) if not isinstance(sense, Sense) else sense
    lines = text.splitlines() if isinstance(text, str) else list(text)

    n: Optional[int] = None
    m: Optional[int] = None
    header_line = 0
    offset = Fraction(0)
    entries: List[Tuple[int, int, Fraction]] = []
    seen: Dict[Tuple[int, int], int] = {}

    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith('#'):
            match = _OFFSET.match(line)
            if match and kind is ProblemKind.ISING:
                offset = _value(match.group(1), number)
            continue

        tokens = line.split()
        if n is None:
            if len(tokens) != 2 or not all(t.isdigit() for t in tokens):
                raise HeaderError(f"malformed header {line!r}, expected 'n m'", number)
            n, m = int(tokens[0]), int(tokens[1])
            header_line = number
            if n < 1:
                raise HeaderError(f"variable count must be positive, got {n}", number)
            continue

        if len(tokens) != 3:
            raise ParseError(f"expected 'i j value', got {line!r}", number)
        try:
            i, j = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(f"indices must be integers, got {line!r}", number) from None
        value = _value(tokens[2], number)

        for index in (i, j):
            if not 1 <= index <= n:
                raise IndexRangeError(f"index {index} out of range for n={n}", number)
        if i > j:
            i, j = j, i
        if i == j and kind is ProblemKind.MAXCUT:
            raise IndexRangeError(f"self-loop on node {i}", number)
        if (i, j) in seen:
            raise DuplicateEntryError(f"duplicate entry ({i}, {j}), first seen on line {seen[(i, j)]}", number)
        seen[(i, j)] = number
        entries.append((i, j, value))

        if len(entries) > m:
            raise EntryCountError(f"more than m={m} entries", number)

    if n is None:
        raise HeaderError("missing 'n m' header", len(lines) or 1)
    if len(entries) != m:
        raise EntryCountError(f"header declares m={m} entries, found {len(entries)}", header_line)

    if kind is ProblemKind.QUBO:
        return QuboInstance(n, tuple((i, j, _plain(v)) for i, j, v in entries), sense, name)
    if kind is ProblemKind.MAXCUT:
        return MaxCutInstance(n, tuple((i, j, _plain(v)) for i, j, v in entries), sense, name)

    couplings = {(i - 1, j - 1): v for i, j, v in entries if i != j}
    fields = [Fraction(0)] * n
    for i, j, v in entries:
        if i == j:
            fields[i - 1] = v
    return ising_from_fractions(n, couplings, fields, offset, sense, name)


def read_instance(path: str, kind: Union[ProblemKind, str] = ProblemKind.QUBO,
                  sense: Union[Sense, str] = Sense.MIN) -> ParsedInstance:
    """
    读取实例文件

    Args:
        path: 文件路径
        kind: 类型
        sense: 方向

    Returns:
        解析后的实例
    """
    name = os.path.basename(path)
    with open(path, 'r', encoding='utf-8') as f:
        inst = parse_instance(f.read(), kind, sense, name)
    logger.info(f"Loaded {kind if isinstance(kind, str) else kind.value} instance {name} (n={inst.n})")
    return inst


def to_ising(inst: ParsedInstance) -> IsingInstance:
    """任意解析结果 -> 内部伊辛形式"""
    if isinstance(inst, QuboInstance):
        return qubo_to_ising(inst)
    if isinstance(inst, MaxCutInstance):
        return maxcut_to_ising(inst)
    return inst


def format_instance(inst: ParsedInstance) -> str:
    """
    输出稀疏文本 (parse_instance 的逆操作)

    Args:
        inst: 实例

    Returns:
        str: 文本
    """
    if isinstance(inst, QuboInstance):
        rows = [(i, j, v) for i, j, v in inst.entries]
        return _emit(inst.n, rows)
    if isinstance(inst, MaxCutInstance):
        rows = [(i, j, v) for i, j, v in inst.edges]
        return _emit(inst.n, rows)

    # 伊辛：原始方向、原始单位
    sign = -1 if inst.sense is Sense.MAX else 1
    rows = [(i + 1, j + 1, Fraction(v * sign, inst.scale)) for (i, j), v in sorted(inst.couplings.items())]
    rows += [(i + 1, i + 1, Fraction(v * sign, inst.scale)) for i, v in enumerate(inst.fields) if v != 0]
    rows.sort(key=lambda r: (r[0], r[1]))
    header = []
    if inst.offset != 0:
        header.append(f"# offset {_decimal(Fraction(inst.offset * sign, inst.scale))}")
    return _emit(inst.n, rows, header)


def write_instance(inst: ParsedInstance, path: str):
    """写入实例文件"""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(format_instance(inst))
    logger.info(f"Wrote instance to {path}")


def _emit(n: int, rows: List[Tuple[int, int, Fraction]], header: List[str] = None) -> str:
    lines = list(header or [])
    lines.append(f"{n} {len(rows)}")
    lines.extend(f"{i} {j} {_decimal(Fraction(v))}" for i, j, v in rows)
    return "\n".join(lines) + "\n"


def _value(token: str, number: int) -> Fraction:
    if not _DECIMAL.match(token):
        raise ValueFormatError(f"coefficient {token!r} is not a decimal number", number)
    try:
        return Fraction(Decimal(token))
    except (InvalidOperation, ValueError):
        raise ValueFormatError(f"coefficient {token!r} is not a decimal number", number) from None


def _plain(value: Fraction) -> Union[int, Fraction]:
    return value.numerator if value.denominator == 1 else value


def _decimal(value: Fraction) -> str:
    """有限十进制小数的精确表示"""
    if value.denominator == 1:
        return str(value.numerator)
    digits = 0
    scaled = value
    while scaled.denominator != 1:
        scaled *= 10
        digits += 1
        if digits > 30:
            raise ValueError(f"{value} has no finite decimal representation")
    text = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    sign = "-" if value < 0 else ""
    return f"{sign}{text[:-digits]}.{text[-digits:]}"
