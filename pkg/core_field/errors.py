"""
core_field 异常定义
"""


class SignatureMismatchError(ValueError):
    """两个 K_R 元素的符号 (r, s) 不一致"""


class ZeroCoordinateError(ValueError):
    """对数嵌入 / 高度要求所有坐标非零"""


class GaloisIndexError(ValueError):
    """自同构编号越界，或置换不在存储的 Galois 群中"""


class FieldValidationError(ValueError):
    """域数据违反不变量"""

    def __init__(self, invariant: str, message: str):
        self.invariant = invariant
        super().__init__(f"{invariant}: {message}")
