"""
reduction 异常定义
"""


class NotPisotError(ValueError):
    """输入单位不是 Pisot 单位"""


class AdmissibleWindowError(ValueError):
    """delta 不在 (max_{j>1} |u_j|^2, 1] 内"""


class IntegerMinimumError(ValueError):
    """迹型 Gram 矩阵非正定或半径增长超过上限"""
