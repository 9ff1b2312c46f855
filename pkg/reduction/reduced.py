"""
约化域成员判定：对所有单位 v 有 Tr(a) <= Tr(a v v*)

只需检查有限多个单位：先验证 Pisot 单位 u 的各共轭满足不等式，此时任何使
Tr(a v v*) < Tr(a) 的 v 都满足 Tr(v v*) < w t_K(u)^2，其对数向量落在有限立方体内。
"""
import logging
import math
from typing import Optional

import numpy as np

from core_field import FieldData, TotallyPositiveElement, trace
from unit_lattice import (
    LogUnitLattice,
    UnitExponentVector,
    build_lattice,
    enumerate_lattice_points_in_cube,
    pisot_search,
    unit_embedding,
    unit_moduli_squared,
)

from .algorithm import conjugate_profiles
from .tk import t_k_of_unit

logger = logging.getLogger(__name__)

REDUCED_REL_TOL = 1e-8
DEFAULT_EPSILON = 0.01


def sound_cube_radius(field_data: FieldData, t_k: float) -> float:
    """Tr(v v*) < w t^2 的单位满足 ||Log v||_inf <= (1/2) log(w t^2) max(w, n-1)"""
    w = 2.0 if field_data.signature.s > 0 else 1.0
    return 0.5 * math.log(w * t_k ** 2) * max(w, field_data.n - 1)


def find_reduction_witness(
    field_data: FieldData,
    a: TotallyPositiveElement,
    lattice: Optional[LogUnitLattice] = None,
    unit: Optional[UnitExponentVector] = None,
) -> Optional[UnitExponentVector]:
    """
    返回一个使 Tr(a v v*) < Tr(a) 的单位 v；a 已约化时返回 None

    Args:
        unit: 使用的 Pisot 单位，缺省时调用 pisot_search
    """
    lattice = lattice if lattice is not None else build_lattice(field_data)
    if unit is None:
        unit = pisot_search(field_data, lattice, DEFAULT_EPSILON).unit
    weights = field_data.signature.weights
    base = trace(a)
    threshold = base * (1 - REDUCED_REL_TOL)

    for profile in conjugate_profiles(field_data, lattice, unit):
        if float(np.dot(weights, a.coords * profile.moduli_sq)) < threshold:
            logger.debug(f"共轭 {profile.automorphism} 给出更小的迹")
            return profile.unit

    t_k = t_k_of_unit(field_data.project(unit_embedding(field_data, unit)))
    w = 2.0 if field_data.signature.s > 0 else 1.0
    limit = w * t_k ** 2
    radius = sound_cube_radius(field_data, t_k)

    checked = 0
    for point in enumerate_lattice_points_in_cube(lattice, radius):
        if not any(point.exponents):
            continue
        moduli_sq = unit_moduli_squared(field_data, point.exponents)
        if float(np.dot(weights, moduli_sq)) >= limit:
            continue
        checked += 1
        if float(np.dot(weights, a.coords * moduli_sq)) < threshold:
            return UnitExponentVector(point.exponents, 0)
    logger.debug(f"{field_data.name}: 检查了 {checked} 个候选单位，未发现更小的迹")
    return None


def is_reduced(
    field_data: FieldData,
    a: TotallyPositiveElement,
    lattice: Optional[LogUnitLattice] = None,
    unit: Optional[UnitExponentVector] = None,
) -> bool:
    return find_reduction_witness(field_data, a, lattice, unit) is None
