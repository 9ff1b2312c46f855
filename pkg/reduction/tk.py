"""
t_K(u) 与 t_K(u, delta)

t_K(u, delta)^2 = 1 + (|u|^2 - delta) / (delta - max_{j>1} |u_j|^2)，delta = 1 时即 t_K(u)。
"""
import logging
import math
from typing import Sequence, Tuple, Union

import numpy as np

from core_field import KREElement, is_pisot, max_modulus_first

from .errors import AdmissibleWindowError, NotPisotError

logger = logging.getLogger(__name__)

UnitLike = Union[KREElement, Sequence[complex], np.ndarray]


def pisot_moduli_squared(u: UnitLike) -> Tuple[float, float]:
    """
    按最大模在前排列后返回 (|u|^2, max_{j>1} |u_j|^2)

    Raises:
        NotPisotError: 排序后仍不满足 Pisot 条件
    """
    ordered = max_modulus_first(u)
    if not is_pisot(ordered):
        raise NotPisotError(f"不是 Pisot 单位: 模长 {np.round(np.abs(ordered), 6).tolist()}")
    moduli_sq = np.abs(ordered) ** 2
    return float(moduli_sq[0]), float(np.max(moduli_sq[1:]))


def t_k_squared(u: UnitLike, delta: float = 1.0) -> float:
    lead, rest = pisot_moduli_squared(u)
    if not (rest < delta <= 1.0):
        raise AdmissibleWindowError(
            f"delta={delta} 不在允许区间 ({rest:.6g}, 1] 内"
        )
    return 1.0 + (lead - delta) / (delta - rest)


def t_k_of_unit(u: UnitLike) -> float:
    return math.sqrt(t_k_squared(u, 1.0))


def t_k_delta(u: UnitLike, delta: float) -> float:
    """
    Raises:
        NotPisotError: u 不是 Pisot 单位
        AdmissibleWindowError: delta 越界
    """
    return math.sqrt(t_k_squared(u, delta))
