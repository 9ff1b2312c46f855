"""
l_inf 覆盖半径：well-rounded 格的闭式上界与基本域网格上的暴力估计
"""
import logging
from dataclasses import dataclass

import numpy as np

from .enumeration import MAX_ENUMERATION_RANK, exponent_grid, is_well_rounded
from .errors import HypothesisViolationError, RankTooLargeError
from .log_lattice import LogUnitLattice

logger = logging.getLogger(__name__)

MAX_ESTIMATE_RANK = 3
# 每批处理的 (网格点 x 候选格点 x 坐标) 元素数
CHUNK_ELEMENTS = 20_000_000


def covering_radius_bound_value(rank: int, volume: float) -> float:
    """rank <= 10 时为 (sqrt(rank)/2) vol^{1/rank}，否则为 (rank/2) vol^{1/rank}"""
    if rank < 1:
        raise ValueError("秩必须 >= 1")
    root = volume ** (1.0 / rank)
    if rank <= 10:
        return float(np.sqrt(rank) / 2.0 * root)
    return float(rank / 2.0 * root)


def covering_radius_bound(
    lattice: LogUnitLattice,
    tol: float = 1e-6,
    assume_well_rounded: bool = False,
) -> float:
    """
    well-rounded 格的覆盖半径上界

    秩超过枚举上限时无法验证前提，须显式传入 assume_well_rounded。

    Raises:
        HypothesisViolationError: 格不是 well-rounded
    """
    if not assume_well_rounded:
        if lattice.rank > MAX_ENUMERATION_RANK:
            raise RankTooLargeError(
                f"秩 {lattice.rank} 无法枚举验证 well-rounded，需要 assume_well_rounded=True"
            )
        if not is_well_rounded(lattice, tol):
            raise HypothesisViolationError("格不是 l_inf well-rounded，覆盖半径界的前提不成立")
    return covering_radius_bound_value(lattice.rank, lattice.volume)


@dataclass(frozen=True, eq=False)
class CoveringRadiusEstimate:
    lower: float
    upper: float
    deep_hole: np.ndarray
    cell_radius: float
    grid_points: int


def covering_radius_estimate(
    lattice: LogUnitLattice,
    grid_resolution: float = 1e-3,
    max_rank: int = MAX_ESTIMATE_RANK,
) -> CoveringRadiusEstimate:
    """
    在基本平行体上的网格做深洞搜索

    网格取各小格中心，小格内任意点到中心的 l_inf 距离不超过 cell_radius <= grid_resolution，
    因此 lower = 网格上的最大最近距离 <= rho_inf <= lower + cell_radius = upper。

    Raises:
        RankTooLargeError: 秩超过 max_rank
    """
    if lattice.rank > max_rank:
        raise RankTooLargeError(f"秩 {lattice.rank} 超过网格估计上限 {max_rank}")
    if grid_resolution <= 0:
        raise ValueError("grid_resolution 必须为正")

    norms = lattice.basis_linf
    counts = np.ceil(lattice.rank * norms / (2.0 * grid_resolution)).astype(np.int64)
    counts = np.maximum(counts, 1)
    steps = 1.0 / counts
    cell_radius = float(np.sum(0.5 * steps * norms))

    # 平行体内任一点到最近顶点的距离不超过 d_max
    d_max = 0.5 * float(np.sum(norms))
    spans = d_max * lattice.dual_l1
    lows = np.floor(-spans).astype(np.int64)
    highs = np.ceil(1.0 + spans).astype(np.int64)
    candidates = exponent_grid(lows, highs) @ lattice.basis

    axes = [(np.arange(c) + 0.5) / c for c in counts]
    mesh = np.meshgrid(*axes, indexing="ij")
    centers = np.stack([m.reshape(-1) for m in mesh], axis=1)
    total = centers.shape[0]
    chunk = max(1, CHUNK_ELEMENTS // (len(candidates) * lattice.ambient_dim))
    logger.debug(
        f"覆盖半径估计: {total} 个网格点, {len(candidates)} 个候选格点, 每批 {chunk}"
    )

    lower = -1.0
    deep_hole = np.zeros(lattice.ambient_dim)
    for start in range(0, total, chunk):
        points = centers[start:start + chunk] @ lattice.basis
        diff = np.abs(points[:, None, :] - candidates[None, :, :]).max(axis=2)
        nearest = diff.min(axis=1)
        k = int(np.argmax(nearest))
        if nearest[k] > lower:
            lower = float(nearest[k])
            deep_hole = points[k]

    return CoveringRadiusEstimate(
        lower=lower,
        upper=lower + cell_radius,
        deep_hole=deep_hole,
        cell_radius=cell_radius,
        grid_points=total,
    )
