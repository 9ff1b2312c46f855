"""
实二次域 Q(sqrt d) 的基本单位

对整数环生成元 omega（d = 1 mod 4 时为 (1+sqrt d)/2，否则为 sqrt d）做连分数展开，
第一个范数为 +-1 的渐近分数 A/B 给出基本单位 A - B omega'。全程整数运算。
"""
import logging
import math
from dataclasses import dataclass

import mpmath

from .errors import PellError

logger = logging.getLogger(__name__)

MAX_D = 10 ** 6
MAX_STEPS = 10 ** 6


@dataclass(frozen=True)
class PellResult:
    """基本单位 (p + q sqrt d) / denom"""
    d: int
    p: int
    q: int
    denom: int
    norm: int
    regulator: float

    def value(self, dps: int = 30) -> mpmath.mpf:
        with mpmath.workdps(dps):
            return (self.p + self.q * mpmath.sqrt(self.d)) / self.denom

    def conjugate_value(self, dps: int = 30) -> mpmath.mpf:
        with mpmath.workdps(dps):
            return (self.p - self.q * mpmath.sqrt(self.d)) / self.denom

    def __str__(self):
        head = f"{self.p} + {self.q}*sqrt({self.d})"
        return head if self.denom == 1 else f"({head})/{self.denom}"


def is_squarefree(d: int) -> bool:
    if d < 1:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def pell_fundamental_unit(d: int) -> PellResult:
    """
    Raises:
        PellError: d 不是 [2, 10^6] 内的无平方因子整数
    """
    if not isinstance(d, int) or d < 2 or d > MAX_D:
        raise PellError(f"d 必须是 2..{MAX_D} 之间的整数，当前 {d}")
    if not is_squarefree(d):
        raise PellError(f"d = {d} 含平方因子")

    root = math.isqrt(d)
    half_integral = d % 4 == 1
    # omega = (P + sqrt d) / Q
    P, Q = (1, 2) if half_integral else (0, 1)
    a_prev, a_curr = 0, 1   # A_{-2}, A_{-1}
    b_prev, b_curr = 1, 0   # B_{-2}, B_{-1}

    for _ in range(MAX_STEPS):
        if Q <= 0:
            raise PellError(f"连分数展开出现非正分母 Q={Q}")
        a = (P + root) // Q
        a_prev, a_curr = a_curr, a * a_curr + a_prev
        b_prev, b_curr = b_curr, a * b_curr + b_prev
        A, B = a_curr, b_curr

        if half_integral:
            p, q = 2 * A - B, B
            norm4 = p * p - d * q * q
            if abs(norm4) == 4:
                denom = 2
                if p % 2 == 0 and q % 2 == 0:
                    p, q, denom = p // 2, q // 2, 1
                return _result(d, p, q, denom, norm4 // 4)
        else:
            norm = A * A - d * B * B
            if abs(norm) == 1:
                return _result(d, A, B, 1, norm)

        P = a * Q - P
        Q = (d - P * P) // Q
    raise PellError(f"{MAX_STEPS} 步内未找到 d={d} 的基本单位")


def _result(d: int, p: int, q: int, denom: int, norm: int) -> PellResult:
    with mpmath.workdps(30):
        reg = float(mpmath.log((p + q * mpmath.sqrt(d)) / denom))
    result = PellResult(d=d, p=p, q=q, denom=denom, norm=norm, regulator=reg)
    logger.debug(f"Q(sqrt {d}) 基本单位 {result}, 范数 {norm}, 调节子 {reg:.10f}")
    return result
