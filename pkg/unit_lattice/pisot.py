"""
Pisot 单位搜索

构造目标点 x = ((k)(rho+eps), -(rho+eps), ..., -(rho+eps))（k = r+s-1），求 l_inf 最近格向量，
得到的单位对数向量只有第一个坐标为正，因而是 Pisot 单位。
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from core_field import FieldData, is_pisot

from .covering import MAX_ESTIMATE_RANK, covering_radius_bound, covering_radius_estimate
from .enumeration import MAX_ENUMERATION_RANK, closest_vector_linf, enumerate_lattice_points_in_cube
from .errors import LatticeError, PisotSearchError
from .log_lattice import LogUnitLattice, UnitExponentVector, unit_embedding

logger = logging.getLogger(__name__)

RETRY_CAP = 8
WINDOW_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class PisotSearchResult:
    unit: UnitExponentVector
    embeddings: np.ndarray
    log_vector: np.ndarray
    rho: float
    rho_source: str
    epsilon: float
    attempts: int
    window_low: float
    window_high: float
    window_holds: Optional[bool]

    @property
    def log_modulus(self) -> float:
        """log|u|（未加权）"""
        return float(np.log(np.abs(self.embeddings[0])))


@dataclass(frozen=True, eq=False)
class MinPisotHeight:
    height: float
    unit: UnitExponentVector
    log_vector: np.ndarray
    search_radius: float
    candidates: int = field(default=0)


def _rho_for(lattice: LogUnitLattice, grid_resolution: float, max_rank: int):
    if lattice.rank <= MAX_ESTIMATE_RANK:
        estimate = covering_radius_estimate(lattice, grid_resolution)
        return estimate.upper, "estimate"
    assume = lattice.rank > max_rank
    if assume:
        logger.warning(f"秩 {lattice.rank} 无法验证 well-rounded，按 Galois 域假设直接使用覆盖半径界")
    else:
        logger.warning("秩 > 3，rho_inf 使用闭式上界，窗口检查仅作参考")
    return covering_radius_bound(lattice, assume_well_rounded=assume), "bound"


def pisot_search(
    field_data: FieldData,
    lattice: LogUnitLattice,
    epsilon: float,
    grid_resolution: float = 1e-3,
    retry_cap: int = RETRY_CAP,
    max_rank: int = MAX_ENUMERATION_RANK,
) -> PisotSearchResult:
    """
    求一个第一坐标占优的 Pisot 单位

    Args:
        epsilon: 目标点的偏移量，必须为正
        retry_cap: 验证失败时 epsilon 翻倍重试的次数上限

    Raises:
        LatticeError: 单位秩为 0
        PisotSearchError: 重试用尽仍未通过验证，diagnostics 中附带每次尝试的信息
    """
    if lattice.rank < 1:
        raise LatticeError("单位秩为 0，不存在 Pisot 单位")
    if epsilon <= 0:
        raise ValueError(f"epsilon 必须为正，当前 {epsilon}")

    rho, source = _rho_for(lattice, grid_resolution, max_rank)
    k = lattice.rank
    attempts = []

    for attempt in range(retry_cap + 1):
        eps = epsilon * 2 ** attempt
        shift = rho + eps
        target = np.full(lattice.ambient_dim, -shift)
        target[0] = k * shift
        closest = closest_vector_linf(lattice, target, max_rank)
        unit = UnitExponentVector(closest.exponents, 0)
        embeddings = unit_embedding(field_data, unit)
        log_vector = closest.point

        signs_ok = bool(log_vector[0] > 0 and np.all(log_vector[1:] < 0))
        pisot_ok = is_pisot(field_data.project(embeddings))
        low = (k - 1) * rho + k * eps
        high = (k + 1) * rho + k * eps
        attempts.append({
            "epsilon": eps,
            "exponents": list(closest.exponents),
            "distance": closest.distance,
            "log_vector": log_vector.tolist(),
            "signs_ok": signs_ok,
            "pisot_ok": pisot_ok,
        })
        if not (signs_ok and pisot_ok):
            logger.warning(f"Pisot 验证失败（eps={eps:.4g}），epsilon 翻倍重试")
            continue

        # 加权对数坐标 v_1 对应 log|u|（实）或 2log|u|（复）
        v1 = float(log_vector[0])
        window_holds: Optional[bool] = None
        if source == "estimate":
            rest = log_vector[1:]
            window_holds = bool(
                low - WINDOW_TOL <= v1 <= high + WINDOW_TOL
                and np.all(rest >= -2 * rho - eps - WINDOW_TOL)
                and np.all(rest <= -eps + WINDOW_TOL)
            )
            if not window_holds:
                logger.warning(f"v_1 = {v1:.6f} 不在窗口 [{low:.6f}, {high:.6f}] 内")
        logger.info(
            f"{field_data.name}: 找到 Pisot 单位 指数={list(closest.exponents)} "
            f"v_1={v1:.6f} (rho={rho:.6f} 来源={source}, eps={eps:.4g})"
        )
        return PisotSearchResult(
            unit=unit,
            embeddings=embeddings,
            log_vector=log_vector,
            rho=rho,
            rho_source=source,
            epsilon=eps,
            attempts=attempt + 1,
            window_low=low,
            window_high=high,
            window_holds=window_holds,
        )

    diagnostics: Dict[str, Any] = {"rho": rho, "rho_source": source, "attempts": attempts}
    raise PisotSearchError(
        f"{field_data.name}: {retry_cap + 1} 次尝试后仍未找到 Pisot 单位", diagnostics
    )


def min_pisot_height(
    field_data: FieldData,
    lattice: LogUnitLattice,
    epsilon: float = 0.01,
    grid_resolution: float = 1e-3,
    max_rank: int = MAX_ENUMERATION_RANK,
) -> MinPisotHeight:
    """
    Pisot 单位的最小 Weil 高度

    单位在某个共轭次序下是 Pisot 的，当且仅当其对数向量恰有一个正坐标；
    此时高度为该坐标除以 n。以 pisot_search 的结果为上界，枚举立方体内全部格点。
    """
    found = pisot_search(field_data, lattice, epsilon, grid_resolution, max_rank=max_rank)
    radius = float(np.max(found.log_vector)) + 1e-9

    best = None
    count = 0
    for p in enumerate_lattice_points_in_cube(lattice, radius, max_rank):
        positive = p.point > 1e-12
        if positive.sum() != 1 or np.any(np.abs(p.point[~positive]) <= 1e-12):
            continue
        count += 1
        height = float(p.point[positive][0]) / field_data.n
        if best is None or height < best[0] - 1e-15:
            best = (height, p)

    height, p = best
    logger.info(f"{field_data.name}: 最小 Pisot 高度 {height:.6f}，指数 {list(p.exponents)}")
    return MinPisotHeight(
        height=height,
        unit=UnitExponentVector(p.exponents, 0),
        log_vector=p.point,
        search_radius=radius,
        candidates=count,
    )
