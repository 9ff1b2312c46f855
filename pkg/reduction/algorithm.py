"""
一元迹型的 Pisot 单位约化

对 Pisot 单位 u 的全部 Galois 共轭 v_j，只要 Tr(a v_j v_j*) < delta Tr(a) 就令 a -> a v_j v_j*
并从 j = 1 重新开始，直到一整轮没有更新。净变换以指数向量累积，当前元素每次都由
原始 a 与净指数重新计算。
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from core_field import FieldData, TotallyPositiveElement, trace
from unit_lattice import (
    LogUnitLattice,
    UnitExponentVector,
    build_lattice,
    conjugate_unit_exponents,
    unit_embedding,
    unit_moduli_squared,
)

from .errors import AdmissibleWindowError
from .tk import pisot_moduli_squared, t_k_delta

logger = logging.getLogger(__name__)

# 共轭模长轮廓去重的相对容差
PROFILE_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class ReductionCertificate:
    reduced_element: TotallyPositiveElement
    applied: UnitExponentVector
    rounds: int
    trace_initial: float
    trace_final: float
    t_delta: float
    delta: float
    unit: UnitExponentVector
    trace_history: List[float] = field(default_factory=list)
    conjugates_checked: int = 0

    @property
    def round_bound(self) -> int:
        """ceil(log(Tr(a)/Tr(a')) / log(1/delta)) + 1"""
        ratio = self.trace_initial / self.trace_final
        if ratio <= 1:
            return 1
        return math.ceil(math.log(ratio) / math.log(1 / self.delta)) + 1


@dataclass(frozen=True, eq=False)
class ConjugateProfile:
    """一个共轭单位及其 |v_j|^2"""
    automorphism: int
    unit: UnitExponentVector
    moduli_sq: np.ndarray


def conjugate_profiles(
    field_data: FieldData,
    lattice: LogUnitLattice,
    unit: UnitExponentVector,
) -> List[ConjugateProfile]:
    """按自同构编号排列、按模长轮廓去重的共轭列表"""
    profiles: List[ConjugateProfile] = []
    for i, conj in enumerate(conjugate_unit_exponents(field_data, lattice, unit), start=1):
        moduli_sq = unit_moduli_squared(field_data, conj.exponents)
        if any(np.allclose(p.moduli_sq, moduli_sq, rtol=PROFILE_RTOL, atol=0) for p in profiles):
            continue
        profiles.append(ConjugateProfile(i, conj, moduli_sq))
    return profiles


def _max_rounds(a: TotallyPositiveElement, delta: float) -> int:
    # Tr(a') >= n * Nm(a)^{1/n}，且 Nm 在单位作用下不变
    sig = a.signature
    weights = sig.weights
    floor_trace = sig.n * math.exp(float(np.dot(weights, np.log(a.coords))) / sig.n)
    ratio = max(trace(a) / floor_trace, 1.0)
    return math.ceil(math.log(ratio) / math.log(1 / delta)) + 2


def reduce_unary(
    field_data: FieldData,
    a: TotallyPositiveElement,
    unit: UnitExponentVector,
    delta: float,
    lattice: Optional[LogUnitLattice] = None,
) -> ReductionCertificate:
    """
    约化全正元素 a

    Args:
        unit: Pisot 单位（指数表示）
        delta: 需满足 max_{j>1} |u_j|^2 < delta < 1

    Returns:
        ReductionCertificate，reduced_element = a * v v*，v 为 applied 表示的单位

    Raises:
        NotPisotError: unit 不是 Pisot 单位
        AdmissibleWindowError: delta 越界或 delta = 1
    """
    if a.signature != field_data.signature:
        raise ValueError(f"元素符号 {a.signature} 与域符号 {field_data.signature} 不符")
    embeddings = field_data.project(unit_embedding(field_data, unit))
    _, rest = pisot_moduli_squared(embeddings)
    if not (rest < delta < 1.0):
        raise AdmissibleWindowError(f"delta={delta} 不在区间 ({rest:.6g}, 1) 内")
    t_delta = t_k_delta(embeddings, delta)

    lattice = lattice if lattice is not None else build_lattice(field_data)
    profiles = conjugate_profiles(field_data, lattice, unit)
    weights = field_data.signature.weights
    a0 = a.coords
    torsion_order = field_data.torsion_order

    net = UnitExponentVector.zero(field_data.rank)
    current_trace = trace(a)
    trace_initial = current_trace
    history = [current_trace]
    cap = _max_rounds(a, delta)
    rounds = 0

    while True:
        applied = False
        for profile in profiles:
            candidate = net.combine(profile.unit, torsion_order)
            candidate_trace = float(np.dot(weights, a0 * unit_moduli_squared(field_data, candidate.exponents)))
            if candidate_trace < delta * current_trace:
                net = candidate
                current_trace = candidate_trace
                history.append(current_trace)
                rounds += 1
                applied = True
                logger.debug(f"第 {rounds} 次更新: 共轭 {profile.automorphism}, Tr = {current_trace:.10g}")
                break
        if not applied:
            break
        if rounds > cap:
            raise RuntimeError(f"约化轮数 {rounds} 超过理论上限 {cap}")

    reduced = TotallyPositiveElement(
        a.signature, a0 * unit_moduli_squared(field_data, net.exponents)
    )
    logger.info(
        f"{field_data.name}: 约化完成 rounds={rounds}, Tr {trace_initial:.6g} -> {current_trace:.6g}"
    )
    return ReductionCertificate(
        reduced_element=reduced,
        applied=net,
        rounds=rounds,
        trace_initial=trace_initial,
        trace_final=current_trace,
        t_delta=t_delta,
        delta=delta,
        unit=unit,
        trace_history=history,
        conjugates_checked=len(profiles),
    )
