#!/usr/bin/env python
"""
Pisot 单位约化命令行

用法示例：
    python pisot_service.py pisot --field qsqrt2 --epsilon 0.01
    python pisot_service.py reduce --field qsqrt2 --a 33.97,0.0294 --delta 0.99
    python pisot_service.py facet-bound --r 2 --s 0 --regulator 0.88137
"""
import logging
import sys

from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler

# 加载环境变量（PISOT_OUTPUT_PRECISION）
load_dotenv()

# 日志写到标准错误，标准输出只留 JSON
logging.basicConfig(
    level=logging.INFO,
    format="%(name)s - %(message)s",
    handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
)
logger = logging.getLogger(__name__)


def main() -> int:
    from cli_io.cli import main as cli_main
    return cli_main()


if __name__ == "__main__":
    sys.exit(main())
