"""
l_inf 范数下的精确枚举：立方体内格点、逐次极小、最近向量

所有枚举都在由对偶基界定的指数盒子内完成，盒子按字典序展开，因此输出顺序确定。
"""
import logging
from typing import List, NamedTuple, Sequence, Tuple

import numpy as np

from .errors import LatticeError, RankTooLargeError
from .log_lattice import LogUnitLattice

logger = logging.getLogger(__name__)

MAX_ENUMERATION_RANK = 6
# 指数盒子的额外余量
BOX_SLACK = 2
# 单次展开的指数盒子上限
MAX_BOX_POINTS = 4_000_000
# 最近向量的并列判定
TIE_TOL = 1e-12


class LatticePoint(NamedTuple):
    point: np.ndarray
    exponents: Tuple[int, ...]


class ClosestVector(NamedTuple):
    point: np.ndarray
    exponents: Tuple[int, ...]
    distance: float


def check_rank(lattice: LogUnitLattice, max_rank: int = MAX_ENUMERATION_RANK):
    if lattice.rank > max_rank:
        raise RankTooLargeError(f"秩 {lattice.rank} 超过精确枚举上限 {max_rank}")


def exponent_grid(lows: Sequence[int], highs: Sequence[int]) -> np.ndarray:
    """闭区间 [lows_i, highs_i] 的笛卡尔积，按字典序排列，形状 (N, rank)"""
    sizes = [max(0, int(hi) - int(lo) + 1) for lo, hi in zip(lows, highs)]
    total = int(np.prod(sizes, dtype=np.int64)) if sizes else 0
    if total > MAX_BOX_POINTS:
        raise RankTooLargeError(f"指数盒子过大（{total} 个点），请缩小半径")
    if total == 0:
        return np.zeros((0, len(sizes)), dtype=np.int64)
    axes = [np.arange(int(lo), int(hi) + 1, dtype=np.int64) for lo, hi in zip(lows, highs)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.reshape(-1) for m in mesh], axis=1)


def _linf(points: np.ndarray) -> np.ndarray:
    return np.max(np.abs(points), axis=-1)


def enumerate_lattice_points_in_cube(
    lattice: LogUnitLattice,
    radius: float,
    max_rank: int = MAX_ENUMERATION_RANK,
) -> List[LatticePoint]:
    """
    列出 ||x||_inf <= radius 的全部格点（含 0），按指数字典序

    Raises:
        RankTooLargeError: 秩超过上限
    """
    check_rank(lattice, max_rank)
    if radius < 0:
        return []
    spans = np.floor(radius * lattice.dual_l1 + BOX_SLACK).astype(np.int64)
    grid = exponent_grid(-spans, spans)
    points = grid @ lattice.basis
    tol = 1e-12 * max(1.0, radius)
    mask = _linf(points) <= radius + tol
    logger.debug(f"立方体半径 {radius:.6f}: 盒子 {len(grid)} 个指数，命中 {int(mask.sum())} 个")
    return [
        LatticePoint(points[k], tuple(int(e) for e in grid[k]))
        for k in np.flatnonzero(mask)
    ]


def successive_minima_linf(
    lattice: LogUnitLattice,
    max_rank: int = MAX_ENUMERATION_RANK,
) -> np.ndarray:
    """
    l_inf 逐次极小 lambda_1 <= ... <= lambda_rank

    基向量本身给出 lambda_rank <= max ||b_i||_inf，因此在该半径的立方体内贪心选取
    线性无关的最短向量即得精确值。
    """
    check_rank(lattice, max_rank)
    radius = float(np.max(lattice.basis_linf))
    candidates = [
        p for p in enumerate_lattice_points_in_cube(lattice, radius, max_rank)
        if any(p.exponents)
    ]
    candidates.sort(key=lambda p: float(np.max(np.abs(p.point))))

    chosen: List[np.ndarray] = []
    minima: List[float] = []
    rank_tol = 1e-9 * max(1.0, radius)
    for p in candidates:
        trial = np.vstack(chosen + [p.point])
        if np.linalg.matrix_rank(trial, tol=rank_tol) > len(chosen):
            chosen.append(p.point)
            minima.append(float(np.max(np.abs(p.point))))
            if len(chosen) == lattice.rank:
                break

    if len(minima) != lattice.rank:
        raise LatticeError("枚举未找到足够多的线性无关向量")
    return np.array(minima)


def is_well_rounded(
    lattice: LogUnitLattice,
    tol: float = 1e-6,
    max_rank: int = MAX_ENUMERATION_RANK,
) -> bool:
    minima = successive_minima_linf(lattice, max_rank)
    return bool(minima[-1] / minima[0] <= 1 + tol)


def closest_vector_linf(
    lattice: LogUnitLattice,
    target: Sequence[float],
    max_rank: int = MAX_ENUMERATION_RANK,
) -> ClosestVector:
    """
    l_inf 最近格向量

    先取 Babai 取整作为初始解，再在以其距离为半径的指数盒子内穷举；
    距离并列时取字典序最小的指数。

    Raises:
        LatticeError: 目标不在迹零超平面内
        RankTooLargeError: 秩超过上限
    """
    check_rank(lattice, max_rank)
    target = np.asarray(target, dtype=float).reshape(-1)
    if target.shape[0] != lattice.ambient_dim:
        raise LatticeError(f"目标维数 {target.shape[0]} 与格的环境维数 {lattice.ambient_dim} 不符")
    if abs(float(target.sum())) > 1e-6:
        raise LatticeError(f"目标坐标和 {target.sum():.3e} 不为 0，不在超平面 V 内")

    coeffs = lattice.coefficients(target)
    babai = np.round(coeffs)
    incumbent = float(np.max(np.abs(target - babai @ lattice.basis)))

    slack = 1e-9
    lows = np.ceil(coeffs - incumbent * lattice.dual_l1 - slack).astype(np.int64)
    highs = np.floor(coeffs + incumbent * lattice.dual_l1 + slack).astype(np.int64)
    grid = exponent_grid(lows, highs)
    distances = _linf(target - grid @ lattice.basis)
    best = float(distances.min())
    k = int(np.flatnonzero(distances <= best + TIE_TOL * max(1.0, best))[0])
    exponents = tuple(int(e) for e in grid[k])
    return ClosestVector(lattice.point(exponents), exponents, float(distances[k]))
