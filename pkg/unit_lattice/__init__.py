"""
对数单位格 Lambda_K：体积/调节子、逐次极小、l_inf 最近向量、覆盖半径与 Pisot 单位搜索
"""
from .covering import (
    CoveringRadiusEstimate,
    covering_radius_bound,
    covering_radius_bound_value,
    covering_radius_estimate,
)
from .enumeration import (
    ClosestVector,
    LatticePoint,
    closest_vector_linf,
    enumerate_lattice_points_in_cube,
    is_well_rounded,
    successive_minima_linf,
)
from .errors import HypothesisViolationError, LatticeError, PisotSearchError, RankTooLargeError
from .log_lattice import (
    LogUnitLattice,
    RegulatorReport,
    UnitExponentVector,
    build_lattice,
    conjugate_unit_exponents,
    exponents_of_unit,
    regulator,
    unit_embedding,
    unit_moduli_squared,
)
from .pisot import MinPisotHeight, PisotSearchResult, min_pisot_height, pisot_search

__all__ = [
    "ClosestVector",
    "CoveringRadiusEstimate",
    "HypothesisViolationError",
    "LatticeError",
    "LatticePoint",
    "LogUnitLattice",
    "MinPisotHeight",
    "PisotSearchError",
    "PisotSearchResult",
    "RankTooLargeError",
    "RegulatorReport",
    "UnitExponentVector",
    "build_lattice",
    "closest_vector_linf",
    "conjugate_unit_exponents",
    "covering_radius_bound",
    "covering_radius_bound_value",
    "covering_radius_estimate",
    "enumerate_lattice_points_in_cube",
    "exponents_of_unit",
    "is_well_rounded",
    "min_pisot_height",
    "pisot_search",
    "regulator",
    "successive_minima_linf",
    "unit_embedding",
    "unit_moduli_squared",
]
