"""
cli_io 异常定义
"""


class PellError(ValueError):
    """d 不合法（非无平方因子或超出范围）或连分数展开异常"""
