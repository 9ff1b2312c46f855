"""
分圆域 Q(zeta_p) 与实分圆域 Q(zeta_7)^+ 的域文件生成
"""
import logging
from typing import List

import mpmath

from .files import FieldFile, format_complex

logger = logging.getLogger(__name__)

SUPPORTED_PRIMES = (5, 7)


def _row_exponents(p: int) -> List[int]:
    """行顺序：代表 k = 1..s，然后依次是它们的共轭 p-1, ..., p-s"""
    s = (p - 1) // 2
    reps = list(range(1, s + 1))
    return reps + [p - k for k in reps]


def _galois_perms(exponents: List[int], p: int, fold: bool = False) -> List[List[int]]:
    """
    第 i 个自同构把 sigma_1 送到 sigma_i；
    sigma_j o g_a 对应指数 a*k_j mod p（实子域中再把 k 与 p-k 视为同一个）
    """
    def normalize(k: int) -> int:
        k %= p
        return min(k, p - k) if fold else k

    index = {normalize(k): j for j, k in enumerate(exponents)}
    perms = []
    for a in exponents:
        perms.append([index[normalize(a * k)] + 1 for k in exponents])
    return perms


def gen_cyclotomic_field_file(p: int = 5, precision_digits: int = 30) -> FieldFile:
    """
    Q(zeta_p)：整基 {1, zeta, ..., zeta^{p-2}}，单位为分圆单位
    (1 - zeta^a) / (1 - zeta) = 1 + zeta + ... + zeta^{a-1}，a = 2..(p-1)/2，挠生成元为 -zeta
    """
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"只支持 p in {SUPPORTED_PRIMES}，收到 {p}")
    n = p - 1
    s = n // 2
    exponents = _row_exponents(p)

    with mpmath.workdps(precision_digits + 10):
        zetas = [mpmath.expjpi(mpmath.mpf(2 * k) / p) for k in exponents]
        basis = [[format_complex(z ** j, precision_digits) for j in range(n)] for z in zetas]
        units = [
            [format_complex(sum(z ** i for i in range(a)), precision_digits) for z in zetas]
            for a in range(2, s + 1)
        ]
        torsion = [format_complex(-z, precision_digits) for z in zetas]

    return FieldFile(
        name=f"zeta{p}",
        r=0,
        s=s,
        precision_digits=precision_digits,
        integral_basis=basis,
        unit_generators=units,
        torsion_order=2 * p,
        galois_perms=_galois_perms(exponents, p),
        torsion_generator=torsion,
        description=f"分圆域 Q(zeta_{p})",
    )


def gen_real_cyclotomic_field_file(p: int = 7, precision_digits: int = 30) -> FieldFile:
    """
    Q(zeta_7)^+：theta = zeta + zeta^{-1}，整基 {1, theta, theta^2}，单位 theta 与 1 + theta
    """
    if p != 7:
        raise ValueError(f"实分圆域只支持 p = 7，收到 {p}")
    n = (p - 1) // 2
    exponents = list(range(1, n + 1))

    with mpmath.workdps(precision_digits + 10):
        thetas = [2 * mpmath.cos(2 * mpmath.pi * k / p) for k in exponents]
        basis = [[format_complex(t ** j, precision_digits) for j in range(n)] for t in thetas]
        units = [
            [format_complex(t, precision_digits) for t in thetas],
            [format_complex(1 + t, precision_digits) for t in thetas],
        ]

    return FieldFile(
        name=f"zeta{p}plus",
        r=n,
        s=0,
        precision_digits=precision_digits,
        integral_basis=basis,
        unit_generators=units,
        torsion_order=2,
        galois_perms=_galois_perms(exponents, p, fold=True),
        description=f"实分圆域 Q(zeta_{p})^+",
    )
