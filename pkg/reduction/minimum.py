"""
迹型的整数极小 mu(a) = min_{x in O_K \\ 0} Tr(a x x*)

在整基坐标下 Tr(a x x*) = c^T G c，G = Re(B^H diag(w a) B)。用 Fincke-Pohst 在椭球
c^T G c <= bound 内精确枚举；并列时取字典序最小的坐标。
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core_field import FieldData, IntegerElement, TotallyPositiveElement

from .errors import IntegerMinimumError

logger = logging.getLogger(__name__)

RADIUS_GROWTH_CAP = 2 ** 10
# 迹值并列的相对容差
TIE_REL_TOL = 1e-9
# 挠单位判定：所有嵌入模长为 1
TORSION_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class IntegerMinimumResult:
    mu: float
    argmin: IntegerElement
    trace_xx: float
    bound: float
    candidates: int


def trace_form_gram(field_data: FieldData, a: Optional[TotallyPositiveElement] = None) -> np.ndarray:
    """整基坐标下迹型的 Gram 矩阵；a 缺省时为 Tr(x x*)"""
    dim = field_data.signature.dim
    rows = field_data.integral_basis_embeddings[:dim]
    scale = field_data.signature.weights
    if a is not None:
        if a.signature != field_data.signature:
            raise ValueError(f"元素符号 {a.signature} 与域符号 {field_data.signature} 不符")
        scale = scale * a.coords
    gram = np.real(rows.conj().T @ (scale[:, None] * rows))
    return 0.5 * (gram + gram.T)


def _quadratic_coefficients(gram: np.ndarray) -> np.ndarray:
    """
    Cholesky 分解得到 q 系数：c^T G c = sum_i q_ii (c_i + sum_{j>i} q_ij c_j)^2
    """
    try:
        upper = np.linalg.cholesky(gram).T
    except np.linalg.LinAlgError as e:
        raise IntegerMinimumError(f"迹型 Gram 矩阵不是正定的，域数据可能有误: {e}")
    diag = np.diag(upper)
    q = upper / diag[:, None]
    np.fill_diagonal(q, diag ** 2)
    return q


def fincke_pohst(gram: np.ndarray, bound: float) -> List[Tuple[int, ...]]:
    """椭球 c^T G c <= bound 内的全部非零整点"""
    q = _quadratic_coefficients(gram)
    n = q.shape[0]
    x = [0] * n
    found: List[Tuple[int, ...]] = []
    slack = 1e-12 * max(1.0, bound)

    def recurse(i: int, remaining: float):
        center = -sum(q[i, j] * x[j] for j in range(i + 1, n))
        span = math.sqrt(max(remaining, 0.0) / q[i, i])
        for value in range(math.ceil(center - span - 1e-9), math.floor(center + span + 1e-9) + 1):
            used = q[i, i] * (value - center) ** 2
            if used > remaining + slack:
                continue
            x[i] = value
            if i == 0:
                if any(x):
                    found.append(tuple(x))
            else:
                recurse(i - 1, remaining - used)
        x[i] = 0

    recurse(n - 1, bound)
    return found


def _pick_minimum(gram: np.ndarray, coords: Sequence[Tuple[int, ...]]) -> Tuple[float, Tuple[int, ...]]:
    array = np.array(coords, dtype=float)
    values = np.einsum("ij,jk,ik->i", array, gram, array)
    best = float(values.min())
    ties = [coords[k] for k in np.flatnonzero(values <= best * (1 + TIE_REL_TOL))]
    winner = min(ties)
    winner_value = float(np.array(winner) @ gram @ np.array(winner))
    return winner_value, winner


def integer_minimum(
    field_data: FieldData,
    a: TotallyPositiveElement,
    bound: Optional[float] = None,
    radius_growth_cap: int = RADIUS_GROWTH_CAP,
) -> IntegerMinimumResult:
    """
    精确的整数极小

    Args:
        bound: 初始椭球半径（迹值），缺省取 Tr(a w_1 w_1*)；为空时翻倍

    Raises:
        IntegerMinimumError: Gram 矩阵非正定，或半径翻倍超过 radius_growth_cap * n 倍
    """
    gram = trace_form_gram(field_data, a)
    start = float(gram[0, 0]) if bound is None else float(bound)
    if start <= 0:
        raise IntegerMinimumError(f"初始半径必须为正，当前 {start}")
    limit = start * radius_growth_cap * field_data.n

    current = start
    while True:
        points = fincke_pohst(gram, current)
        if points:
            break
        current *= 2
        if current > limit:
            raise IntegerMinimumError(f"椭球半径增长到 {current:.6g} 仍未找到非零整点")
        logger.debug(f"椭球内无非零整点，半径翻倍到 {current:.6g}")

    mu, coeffs = _pick_minimum(gram, points)
    element = IntegerElement.from_coeffs(field_data, coeffs)
    if element.is_zero:
        raise IntegerMinimumError("极小点落在零向量上")
    trace_xx = float(np.array(coeffs) @ trace_form_gram(field_data) @ np.array(coeffs))
    return IntegerMinimumResult(
        mu=mu, argmin=element, trace_xx=trace_xx, bound=current, candidates=len(points)
    )


def box_for_bound(gram: np.ndarray, bound: float) -> int:
    """包含椭球 c^T G c <= bound 的最小对称坐标盒半宽"""
    inverse = np.linalg.inv(gram)
    return int(math.ceil(math.sqrt(bound * float(np.max(np.diag(inverse)))) + 1e-9))


def integer_minimum_box_scan(
    field_data: FieldData,
    a: TotallyPositiveElement,
    box: int,
) -> IntegerMinimumResult:
    """朴素扫描 [-box, box]^n 内全部非零坐标，作为 integer_minimum 的对照"""
    gram = trace_form_gram(field_data, a)
    n = field_data.n
    axes = [np.arange(-box, box + 1)] * n
    mesh = np.meshgrid(*axes, indexing="ij")
    grid = np.stack([m.reshape(-1) for m in mesh], axis=1)
    grid = grid[np.any(grid != 0, axis=1)]
    coords = [tuple(int(v) for v in row) for row in grid]
    mu, coeffs = _pick_minimum(gram, coords)
    element = IntegerElement.from_coeffs(field_data, coeffs)
    trace_xx = float(np.array(coeffs) @ trace_form_gram(field_data) @ np.array(coeffs))
    return IntegerMinimumResult(mu=mu, argmin=element, trace_xx=trace_xx, bound=float("nan"), candidates=len(coords))


def is_torsion(field_data: FieldData, coeffs: Sequence[int]) -> bool:
    moduli = np.abs(field_data.embed(coeffs))
    return bool(np.all(np.abs(moduli - 1.0) <= TORSION_TOL))


def min_trace_nontorsion(
    field_data: FieldData,
    search_bound: Optional[float] = None,
    radius_growth_cap: int = RADIUS_GROWTH_CAP,
) -> float:
    """
    非零、非单位根整数元素上 Tr(x x*) 的最小值

    search_bound 缺省为 4n；半径内没有非挠元素时翻倍。
    """
    n = field_data.n
    bound = float(search_bound) if search_bound is not None else 4.0 * n
    if bound < n:
        raise ValueError(f"search_bound 必须 >= n = {n}")
    gram = trace_form_gram(field_data)
    limit = bound * radius_growth_cap

    while True:
        candidates = [c for c in fincke_pohst(gram, bound) if not is_torsion(field_data, c)]
        if candidates:
            value, coeffs = _pick_minimum(gram, candidates)
            logger.debug(f"{field_data.name}: 非挠元素最小迹 {value:.10g} 于 {coeffs}")
            return value
        bound *= 2
        if bound > limit:
            raise IntegerMinimumError("半径增长超过上限仍未找到非挠元素")
