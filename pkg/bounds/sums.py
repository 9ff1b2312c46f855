"""
交错和 A(n) = sum_{k=0}^{floor(n/2)} (-1)^k C(n,k) (n/2 - k)^{n-1} 及其渐近比值

A(n) 用精确有理数计算：先乘 2^{n-1} 把半整数幂化成整数再约分。
"""
import logging
import math
from fractions import Fraction

import mpmath

logger = logging.getLogger(__name__)

ExactRational = Fraction

# sqrt(e) / (2 pi)
ENVELOPE_LIMIT = float(mpmath.sqrt(mpmath.e) / (2 * mpmath.pi))
LOG_DOMAIN_THRESHOLD = 30


def alternating_sum(n: int) -> ExactRational:
    """
    精确交错和

    Examples:
        A(2) = 1, A(3) = 3/2, A(4) = 4
    """
    if n < 1:
        raise ValueError(f"n 必须 >= 1，当前 {n}")
    # 2^{n-1} (n/2 - k)^{n-1} = (n - 2k)^{n-1}
    total = sum(
        (-1) ** k * math.comb(n, k) * (n - 2 * k) ** (n - 1)
        for k in range(n // 2 + 1)
    )
    value = Fraction(total, 2 ** (n - 1))
    if value < 0:
        raise ArithmeticError(f"A({n}) = {value} 为负，计算有误")
    return value


def factorial_ratio(n: int) -> ExactRational:
    """A(n) / (n-1)!"""
    return alternating_sum(n) / math.factorial(n - 1)


def envelope_base() -> mpmath.mpf:
    """e^{1 + 1/(2e)}"""
    return mpmath.exp(1 + 1 / (2 * mpmath.e))


def alternating_sum_ratio(n: int, dps: int = 50) -> float:
    """
    A(n) / ((e^{1+1/(2e)})^n (n-1)!)

    n > 30 时在对数域中计算。
    """
    if n < 2:
        raise ValueError(f"n 必须 >= 2，当前 {n}")
    exact = alternating_sum(n)
    with mpmath.workdps(dps):
        base = envelope_base()
        if n > LOG_DOMAIN_THRESHOLD:
            log_num = mpmath.log(exact.numerator) - mpmath.log(exact.denominator)
            log_den = n * mpmath.log(base) + mpmath.loggamma(n)
            return float(mpmath.exp(log_num - log_den))
        value = mpmath.mpf(exact.numerator) / exact.denominator
        return float(value / (base ** n * mpmath.factorial(n - 1)))
