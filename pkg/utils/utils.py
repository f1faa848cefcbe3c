"""
通用工具模块

主要功能：
- 单例装饰器
- 数字格式化
- JSON 输出
- 配置哈希
"""

import hashlib
import json
import os
from fractions import Fraction
from typing import Any, Dict, Union


# -------------------------------- 其他工具函数 --------------------------------


def singleton(cls):
    """
    单例模式装饰器

    Args:
        cls: 类

    Returns:
        function: 获取实例的函数
    """
    instances = {}

    def get_instance(*args, **kwargs):
        if cls not in instances:
            instances[cls] = cls(*args, **kwargs)
        return instances[cls]

    get_instance.reset = instances.clear
    return get_instance


def format_number(number: Union[int, float, Fraction], precision: int = 8,
                  remove_trailing_zeros: bool = True) -> str:
    """
    格式化数字，精确有理数按十进制小数输出

    Args:
        number: 数字
        precision: 精度
        remove_trailing_zeros: 是否移除尾部的0

    Returns:
        str: 格式化后的字符串
    """
    if isinstance(number, Fraction):
        if number.denominator == 1:
            return str(number.numerator)
        number = float(number)
    if isinstance(number, int):
        return str(number)

    format_str = f"{{:.{precision}f}}"
    result = format_str.format(number)

    if remove_trailing_zeros:
        if "." in result:
            result = result.rstrip("0").rstrip(".")

    return result


def json_number(value: Union[int, float, Fraction, None]) -> Union[int, float, str, None]:
    """JSON 输出用：整数保持整数，有理数转浮点"""
    if value is None:
        return None
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else float(value)
    return value


def dump_json(data: Any, file_path: str = None, indent: int = 2) -> str:
    """
    序列化 JSON，可选写入文件

    Args:
        data: 数据
        file_path: 文件路径 (为空时只返回字符串)
        indent: 缩进

    Returns:
        str: JSON 文本
    """
    text = json.dumps(data, indent=indent, ensure_ascii=False)
    if file_path:
        directory = os.path.dirname(os.path.abspath(file_path))
        os.makedirs(directory, exist_ok=True)
        with open(file_path, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    return text


def config_hash(config: Dict[str, Any], length: int = 10) -> str:
    """
    配置哈希 (bench 行里标识一次运行的配置)

    Args:
        config: 配置字典
        length: 哈希长度

    Returns:
        str: 十六进制哈希前缀
    """
    text = json.dumps(config, sort_keys=True, default=str)
    return hashlib.sha1(text.encode("utf-8")).hexdigest()[:length]
