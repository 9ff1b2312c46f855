"""
unit_lattice 异常定义
"""
from typing import Any, Dict, Optional


class LatticeError(ValueError):
    """格构造或坐标恢复失败"""


class RankTooLargeError(LatticeError):
    """秩超过精确枚举的上限"""


class HypothesisViolationError(ValueError):
    """覆盖半径上界的前提不成立（例如格不是 well-rounded）"""


class PisotSearchError(RuntimeError):
    """Pisot 单位搜索在重试上限内未通过验证"""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        self.diagnostics = diagnostics or {}
        super().__init__(message)
