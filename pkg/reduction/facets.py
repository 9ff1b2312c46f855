"""
约化域面的候选单位：立方体 ||x||_inf <= log t_K 内的非零格点
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional

from bounds import FacetBoundInput, FacetBoundResult, blichfeldt_bound, cube_slice_volume, facet_bound
from core_field import FieldData
from unit_lattice import (
    LatticePoint,
    LogUnitLattice,
    UnitExponentVector,
    build_lattice,
    enumerate_lattice_points_in_cube,
    pisot_search,
    regulator,
    unit_embedding,
)

from .tk import t_k_of_unit

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FacetCandidateReport:
    unit: UnitExponentVector
    t_k: float
    radius: float
    points: List[LatticePoint]
    half_counted: int
    with_signs: int
    cube_points: int
    slice_volume: float
    blichfeldt: float
    blichfeldt_ok: bool
    facet: FacetBoundResult

    @property
    def within_facet_bound(self) -> bool:
        return self.half_counted <= self.facet.bound


def enumerate_facet_candidates(
    field_data: FieldData,
    lattice: Optional[LogUnitLattice] = None,
    unit: Optional[UnitExponentVector] = None,
    epsilon: float = 0.01,
) -> FacetCandidateReport:
    """
    枚举候选并与 Blichfeldt 计数和面数上界比较

    half_counted 为非零格点数（v 与 v^{-1} 各计一次，对应 Log(v) 与 -Log(v)），
    with_signs 再计入 +-v。
    """
    lattice = lattice if lattice is not None else build_lattice(field_data)
    if unit is None:
        unit = pisot_search(field_data, lattice, epsilon).unit
    t_k = t_k_of_unit(field_data.project(unit_embedding(field_data, unit)))
    radius = math.log(t_k)

    everything = enumerate_lattice_points_in_cube(lattice, radius)
    points = [p for p in everything if any(p.exponents)]

    rank = lattice.rank
    slice_volume = cube_slice_volume(2 * radius, lattice.ambient_dim)
    blichfeldt = blichfeldt_bound(slice_volume / lattice.volume, rank)

    facet = facet_bound(
        FacetBoundInput(field_data.signature.r, field_data.signature.s, regulator(lattice).standard)
    )

    report = FacetCandidateReport(
        unit=unit,
        t_k=t_k,
        radius=radius,
        points=points,
        half_counted=len(points),
        with_signs=2 * len(points),
        cube_points=len(everything),
        slice_volume=slice_volume,
        blichfeldt=blichfeldt,
        blichfeldt_ok=len(everything) <= blichfeldt + 1e-9,
        facet=facet,
    )
    logger.info(
        f"{field_data.name}: 立方体半径 {radius:.6f} 内 {len(points)} 个非零格点，"
        f"Blichfeldt 界 {blichfeldt:.4f}"
    )
    return report
