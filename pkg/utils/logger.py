"""
日志管理模块

这个模块提供了统一的日志管理功能，支持将日志同时输出到文件和控制台。
主要功能包括：
- 日志格式化
- 文件日志
- 控制台日志 (stderr，保持 stdout 的 JSON 输出干净)
- 日志级别管理

使用示例：
```python
from utils.logger import Logger

logger = Logger.get_logger()
logger.info('Starting search...')
```

导入时按环境变量建立日志器，命令行读取配置后调用 Logger.configure(log.level, log.log_dir)。
环境变量 (同时覆盖配置文件中的 log 段)：
- SPINBOUND_LOG_LEVEL: 日志级别 (DEBUG/INFO/WARNING/ERROR)
- SPINBOUND_LOG_DIR: 日志目录，设为空字符串时不写文件
"""

import logging
import os
import sys
from datetime import datetime
from typing import Optional

DEFAULT_LOG_DIR = "storage/logs"
FORMATTER = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')


class Logger:
    """日志管理类"""

    _logger: Optional[logging.Logger] = None

    @classmethod
    def get_logger(cls) -> logging.Logger:
        """获取日志器单例"""
        if cls._logger is None:
            level = os.getenv("SPINBOUND_LOG_LEVEL", "INFO").upper()
            log_dir = os.getenv("SPINBOUND_LOG_DIR", DEFAULT_LOG_DIR)
            cls._logger = cls.setup_logger("spinbound", getattr(logging, level, logging.INFO), log_dir)
        return cls._logger

    @classmethod
    def configure(cls, level: str = "INFO", log_dir: Optional[str] = None):
        """
        按配置调整日志器

        Args:
            level: 日志级别
            log_dir: 日志目录，None 时保留现有文件处理器，空字符串时不写文件
        """
        logger = cls.get_logger()
        value = getattr(logging, str(level).upper(), logging.INFO)
        logger.setLevel(value)
        if log_dir is not None:
            for handler in [h for h in logger.handlers if isinstance(h, logging.FileHandler)]:
                logger.removeHandler(handler)
                handler.close()
            add_file_handler(logger, log_dir, value)
        for handler in logger.handlers:
            handler.setLevel(value)

    @staticmethod
    def setup_logger(name: str = None,
                     level: int = logging.INFO,
                     log_dir: str = DEFAULT_LOG_DIR) -> logging.Logger:
        """设置日志器"""
        logger = logging.getLogger(name or __name__)
        logger.setLevel(level)
        logger.propagate = False

        # 如果已经有处理器，不再添加
        if logger.handlers:
            return logger

        # 文件处理器
        add_file_handler(logger, log_dir, level)

        # 控制台处理器
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(level)
        console_handler.setFormatter(FORMATTER)
        logger.addHandler(console_handler)

        return logger


def add_file_handler(logger: logging.Logger, log_dir: str, level: int):
    """
    添加按日期命名的文件处理器 spinbound_YYYYMMDD.log

    Args:
        logger: 日志器
        log_dir: 日志目录，为空时不添加
        level: 日志级别
    """
    if not log_dir:
        return
    try:
        os.makedirs(log_dir, exist_ok=True)
        log_file = os.path.join(log_dir, f'spinbound_{datetime.now().strftime("%Y%m%d")}.log')
        file_handler = logging.FileHandler(log_file)
    except OSError:
        # 只读目录下只输出到控制台
        return
    file_handler.setLevel(level)
    file_handler.setFormatter(FORMATTER)
    logger.addHandler(file_handler)
