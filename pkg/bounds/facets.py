"""
约化域面数上界

N_K < 2k + 2 (T1 + T2 + T3)^k * m * A(m)，m = r+s，k = m-1
T1 = (1/2) k^delta m^{1 - 1/(2k)}
T2 = (k/2) log((m+1)/(m-1)) / R^{1/k}
T3 = log(k/2) / R^{1/k}
"""
import logging
import math
from dataclasses import dataclass

from .sums import alternating_sum

logger = logging.getLogger(__name__)

# 已知所有数域的调节子下界
FRIEDMAN_BOUND = 0.2052


def rank_exponent(unit_rank: int) -> float:
    """秩 1..10 取 1/2，否则取 1"""
    return 0.5 if 1 <= unit_rank <= 10 else 1.0


@dataclass(frozen=True)
class FacetBoundInput:
    r: int
    s: int
    regulator: float

    def __post_init__(self):
        if self.r < 0 or self.s < 0:
            raise ValueError(f"符号非法: r={self.r}, s={self.s}")
        if self.r + self.s < 2:
            raise ValueError(f"需要 r+s >= 2，当前 r+s={self.r + self.s}")
        if self.regulator <= 0:
            raise ValueError(f"调节子必须为正，当前 {self.regulator}")
        if self.regulator < FRIEDMAN_BOUND:
            logger.warning(
                f"调节子 {self.regulator} 低于 Friedman 下界 {FRIEDMAN_BOUND}，请检查输入"
            )

    @property
    def m(self) -> int:
        return self.r + self.s

    @property
    def unit_rank(self) -> int:
        return self.r + self.s - 1


@dataclass(frozen=True)
class FacetBoundResult:
    r: int
    s: int
    regulator: float
    delta: float
    term_geometric: float
    term_covering: float
    term_log: float
    bracket: float
    alternating_sum: float
    bound: float
    abstract_exponent: bool


def facet_bound(params: FacetBoundInput, abstract_exponent: bool = False) -> FacetBoundResult:
    """
    计算面数上界并返回各项

    Args:
        abstract_exponent: 把 m 的指数 1 - 1/(2k) 换成 1 + 1/(2k)
    """
    m, k = params.m, params.unit_rank
    delta = rank_exponent(k)
    sign = 1 if abstract_exponent else -1
    root = params.regulator ** (1.0 / k)

    term_geometric = 0.5 * k ** delta * m ** (1 + sign / (2 * k))
    term_covering = (k / 2) * math.log((m + 1) / (m - 1)) / root
    term_log = math.log(k / 2) / root
    bracket = term_geometric + term_covering + term_log
    a_m = float(alternating_sum(m))
    bound = 2 * k + 2 * bracket ** k * m * a_m

    return FacetBoundResult(
        r=params.r,
        s=params.s,
        regulator=params.regulator,
        delta=delta,
        term_geometric=term_geometric,
        term_covering=term_covering,
        term_log=term_log,
        bracket=bracket,
        alternating_sum=a_m,
        bound=bound,
        abstract_exponent=abstract_exponent,
    )
