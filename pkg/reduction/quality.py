"""
约化结果的质量检查：Tr(a') <= max{t^2 / min_S Tr(xx*), 1} mu(a) 以及 Tr(x^ x^*) <= t^2

另外检查坐标下界 a'_i >= Tr(a') / t^2；它不计入 passed。
"""
import logging
from dataclasses import dataclass
from typing import Optional

from core_field import FieldData, TotallyPositiveElement
from unit_lattice import LogUnitLattice, UnitExponentVector

from .algorithm import ReductionCertificate, reduce_unary
from .minimum import IntegerMinimumResult, integer_minimum, min_trace_nontorsion

logger = logging.getLogger(__name__)

REL_TOL = 1e-9
COORDINATE_REL_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class ReductionQualityReport:
    certificate: ReductionCertificate
    minimum: IntegerMinimumResult
    t_delta_squared: float
    min_nontorsion_trace: float
    factor: float
    trace_bound: float
    trace_ok: bool
    argmin_ok: bool
    coordinate_floor: float
    coordinate_ok: bool
    # 复坐标权重修正（t^2 -> 2 t^2），仅 s > 0 时给出
    weighted_factor: Optional[float] = None
    weighted_trace_ok: Optional[bool] = None
    weighted_argmin_ok: Optional[bool] = None
    weighted_coordinate_ok: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return self.trace_ok and self.argmin_ok


def verify_theorem4(
    field_data: FieldData,
    a: TotallyPositiveElement,
    unit: UnitExponentVector,
    delta: float,
    lattice: Optional[LogUnitLattice] = None,
    min_nontorsion: Optional[float] = None,
) -> ReductionQualityReport:
    """
    约化 a 并检查两条不等式

    s > 0 时坐标下界另按 Tr(a') / (2 t^2) 给出 weighted_coordinate_ok，
    未加权的 coordinate_ok 在复坐标上可能不成立。

    Args:
        min_nontorsion: 预先算好的 min_S Tr(xx*)，批量验证时可复用
    """
    certificate = reduce_unary(field_data, a, unit, delta, lattice)
    minimum = integer_minimum(field_data, certificate.reduced_element)
    s_min = min_nontorsion if min_nontorsion is not None else min_trace_nontorsion(field_data)

    t2 = certificate.t_delta ** 2
    factor = max(t2 / s_min, 1.0)
    trace_bound = factor * minimum.mu
    trace_ok = certificate.trace_final <= trace_bound * (1 + REL_TOL)
    argmin_ok = minimum.trace_xx <= t2 * (1 + REL_TOL)
    lowest = float(certificate.reduced_element.coords.min())
    coordinate_floor = certificate.trace_final / t2
    coordinate_ok = lowest >= coordinate_floor * (1 - COORDINATE_REL_TOL)

    weighted = {}
    if field_data.signature.s > 0:
        w_factor = max(2 * t2 / s_min, 1.0)
        weighted = dict(
            weighted_factor=w_factor,
            weighted_trace_ok=certificate.trace_final <= w_factor * minimum.mu * (1 + REL_TOL),
            weighted_argmin_ok=minimum.trace_xx <= 2 * t2 * (1 + REL_TOL),
            weighted_coordinate_ok=lowest >= coordinate_floor / 2 * (1 - COORDINATE_REL_TOL),
        )

    if not (trace_ok and argmin_ok):
        logger.warning(
            f"{field_data.name}: 不等式未通过 Tr(a')={certificate.trace_final:.6g} "
            f"bound={trace_bound:.6g} Tr(xx*)={minimum.trace_xx:.6g} t^2={t2:.6g}"
        )
    return ReductionQualityReport(
        certificate=certificate,
        minimum=minimum,
        t_delta_squared=t2,
        min_nontorsion_trace=s_min,
        factor=factor,
        trace_bound=trace_bound,
        trace_ok=trace_ok,
        argmin_ok=argmin_ok,
        coordinate_floor=coordinate_floor,
        coordinate_ok=coordinate_ok,
        **weighted,
    )
