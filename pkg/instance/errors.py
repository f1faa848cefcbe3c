"""
实例相关异常
"""
from typing import Optional


class InstanceError(ValueError):
    """实例无效"""


class ParseError(InstanceError):
    """解析错误，line 为出错的行号(从 1 开始)"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line: Optional[int] = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class HeaderError(ParseError):
    """头部 "n m" 格式错误"""


class ValueFormatError(ParseError):
    """系数不是十进制整数或小数"""


class IndexRangeError(ParseError):
    """下标越界"""


class DuplicateEntryError(ParseError):
    """重复的 (i, j)"""


class EntryCountError(ParseError):
    """条目数与头部 m 不一致"""


class OverflowGuardError(InstanceError):
    """系数过大，int64 界计算可能溢出"""


class GeneratorError(InstanceError):
    """随机实例参数无效"""


class AssignmentError(InstanceError):
    """赋值长度或取值无效"""
