"""
立方体与迹零超平面截面的体积、Blichfeldt 计数界
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .sums import alternating_sum

logger = logging.getLogger(__name__)


def cube_slice_volume(R: float, n: int) -> float:
    """
    边长为 R 的立方体 [-R/2, R/2]^n 与超平面 sum x_i = 0 的交的 (n-1) 维体积

    = R^{n-1} sqrt(n) / (n-1)! * A(n)
    """
    if R <= 0:
        raise ValueError(f"R 必须为正，当前 {R}")
    if n < 2:
        raise ValueError(f"n 必须 >= 2，当前 {n}")
    return float(R ** (n - 1) * math.sqrt(n) / math.factorial(n - 1) * float(alternating_sum(n)))


@dataclass(frozen=True)
class MonteCarloVolume:
    estimate: float
    accepted: int
    samples: int
    standard_error: float


def cube_slice_volume_monte_carlo(
    R: float,
    n: int,
    samples: int = 1_000_000,
    seed: Optional[int] = 0,
    batch: int = 250_000,
) -> MonteCarloVolume:
    """
    投影平板估计

    截面在前 n-1 个坐标上的投影是 {y in [-R/2,R/2]^{n-1} : |sum y| <= R/2}，
    投影把体积缩小 sqrt(n) 倍。
    """
    if n < 2:
        raise ValueError(f"n 必须 >= 2，当前 {n}")
    rng = np.random.default_rng(seed)
    half = R / 2.0
    accepted = 0
    remaining = samples
    while remaining > 0:
        size = min(batch, remaining)
        y = rng.uniform(-half, half, size=(size, n - 1))
        accepted += int(np.count_nonzero(np.abs(y.sum(axis=1)) <= half))
        remaining -= size

    p = accepted / samples
    scale = R ** (n - 1) * math.sqrt(n)
    stderr = scale * math.sqrt(max(p * (1 - p), 0.0) / samples)
    logger.debug(f"Monte Carlo 截面体积 n={n}: 接受率 {p:.6f}")
    return MonteCarloVolume(
        estimate=p * scale, accepted=accepted, samples=samples, standard_error=stderr
    )


def blichfeldt_bound(volume: float, n: int) -> float:
    """凸的 0 对称体 K 中整点数的上界 n! Vol(K) + n"""
    if volume < 0:
        raise ValueError("体积不能为负")
    return math.factorial(n) * volume + n
