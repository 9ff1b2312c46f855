"""
log t_K 上界与 Pisot 单位 Weil 高度上界
"""
import logging
import math

from .errors import MixedSignatureError
from .facets import rank_exponent

logger = logging.getLogger(__name__)


def _check_m(r: int, s: int) -> int:
    m = r + s
    if r < 0 or s < 0 or m < 2:
        raise ValueError(f"需要 r, s >= 0 且 r+s >= 2，当前 r={r}, s={s}")
    return m


def optimal_epsilon(r: int, s: int) -> float:
    """使 log_tk_bound_epsilon 取最小值的 eps = (log(m+1) - log(m-1)) / 2"""
    m = _check_m(r, s)
    return 0.5 * (math.log(m + 1) - math.log(m - 1))


def log_tk_bound_epsilon(r: int, s: int, rho_inf: float, epsilon: float) -> float:
    """m rho + (m-1) eps - log(1 - e^{-2 eps})"""
    m = _check_m(r, s)
    if epsilon <= 0:
        raise ValueError("epsilon 必须为正")
    return m * rho_inf + (m - 1) * epsilon - math.log(1 - math.exp(-2 * epsilon))


def log_tk_bound(r: int, s: int, rho_inf: float) -> float:
    """m rho + ((m-1)/2) log((m+1)/(m-1)) + log((m-1)/2)"""
    m = _check_m(r, s)
    if rho_inf <= 0:
        raise ValueError("rho_inf 必须为正")
    k = m - 1
    return m * rho_inf + (k / 2) * math.log((m + 1) / k) + math.log(k / 2)


def gamma_for_signature(r: int, s: int) -> int:
    """全实域 1，全复域 2"""
    if s == 0:
        return 1
    if r == 0:
        return 2
    raise MixedSignatureError(
        f"符号 (r={r}, s={s}) 既不全实也不全复，高度上界中的 gamma 没有定义"
    )


def pisot_height_bound(r: int, s: int, regulator: float, gamma: int, epsilon: float) -> float:
    """
    (1/n) ((gamma/2) k^{delta - 1/(2k)} R^{1/k} + k eps)，k = r+s-1

    Raises:
        MixedSignatureError: 混合符号
        ValueError: gamma 与符号不一致或参数非法
    """
    m = _check_m(r, s)
    expected = gamma_for_signature(r, s)
    if gamma != expected:
        raise ValueError(f"符号 (r={r}, s={s}) 对应 gamma={expected}，收到 {gamma}")
    if regulator <= 0 or epsilon <= 0:
        raise ValueError("regulator 与 epsilon 必须为正")
    k = m - 1
    n = r + 2 * s
    delta = rank_exponent(k)
    main = (gamma / 2) * k ** (delta - 1 / (2 * k)) * regulator ** (1 / k)
    return (main + k * epsilon) / n
