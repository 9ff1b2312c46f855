"""
秩 2 格在 l_inf 下的约化基

约化后满足 ||b1|| <= ||b2|| <= ||b1 +- b2||，此时 lambda_1 = ||b1||_inf。
"""
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from unit_lattice import LatticeError, LogUnitLattice

logger = logging.getLogger(__name__)

DEGENERACY_TOL = 1e-12
MAX_STEPS = 10_000


def _norm(v: np.ndarray) -> float:
    return float(np.max(np.abs(v)))


@dataclass(frozen=True, eq=False)
class Rank2Basis:
    b1: np.ndarray
    b2: np.ndarray
    lambda_inf: float
    transform: np.ndarray
    degenerate: bool

    @property
    def matrix(self) -> np.ndarray:
        return np.vstack([self.b1, self.b2])

    def satisfies_reduction(self, tol: float = 1e-12) -> bool:
        n1, n2 = _norm(self.b1), _norm(self.b2)
        slack = tol * max(1.0, n2)
        return (
            n1 <= n2 + slack
            and n2 <= _norm(self.b1 + self.b2) + slack
            and n2 <= _norm(self.b1 - self.b2) + slack
        )


def hypothesis_quantities(b1: np.ndarray, b2: np.ndarray) -> np.ndarray:
    """|alpha|, |beta|, |gamma|, |delta|, |alpha+beta|, |gamma+delta|"""
    alpha, beta = b1[0], b1[1]
    gamma, delta = b2[0], b2[1]
    return np.abs(np.array([alpha, beta, gamma, delta, alpha + beta, gamma + delta]))


def reduce_basis_linf_rank2(b1: Sequence[float], b2: Sequence[float]) -> Rank2Basis:
    """
    贪心约化：先做一次 l2 投影取整，再反复用 b2 +- b1 替换 b2，直到范数不再下降

    Raises:
        LatticeError: 输入线性相关、不在迹零平面内或不是三维向量
    """
    v1 = np.asarray(b1, dtype=float).reshape(-1)
    v2 = np.asarray(b2, dtype=float).reshape(-1)
    if v1.shape != (3,) or v2.shape != (3,):
        raise LatticeError("秩 2 约化只处理 R^3 中的向量")
    for v in (v1, v2):
        if abs(v.sum()) > 1e-9 * max(1.0, _norm(v)):
            raise LatticeError(f"向量 {v.tolist()} 坐标和不为 0")
    if np.linalg.norm(np.cross(v1, v2)) <= DEGENERACY_TOL * max(1.0, _norm(v1) * _norm(v2)):
        raise LatticeError("输入向量线性相关")

    transform = np.eye(2, dtype=np.int64)
    for _ in range(MAX_STEPS):
        if _norm(v2) < _norm(v1):
            v1, v2 = v2, v1
            transform = transform[::-1].copy()

        k = int(np.round(np.dot(v1, v2) / np.dot(v1, v1)))
        if k and _norm(v2 - k * v1) < _norm(v2):
            v2 = v2 - k * v1
            transform[1] -= k * transform[0]
            continue

        plus, minus = _norm(v2 + v1), _norm(v2 - v1)
        current = _norm(v2)
        if min(plus, minus) < current:
            sign = 1 if plus <= minus else -1
            v2 = v2 + sign * v1
            transform[1] += sign * transform[0]
            continue
        break
    else:
        raise LatticeError(f"{MAX_STEPS} 步内未收敛")

    degenerate = bool(np.any(hypothesis_quantities(v1, v2) <= DEGENERACY_TOL))
    if degenerate:
        logger.warning(f"约化基含零分量，不满足非退化前提: b1={v1.tolist()} b2={v2.tolist()}")
    return Rank2Basis(
        b1=v1, b2=v2, lambda_inf=_norm(v1), transform=transform, degenerate=degenerate
    )


def rank2_basis_of(lattice: LogUnitLattice) -> Rank2Basis:
    if lattice.rank != 2 or lattice.ambient_dim != 3:
        raise LatticeError(f"需要 R^3 中的秩 2 格，收到 {lattice}")
    return reduce_basis_linf_rank2(lattice.basis[0], lattice.basis[1])


def random_reduced_basis(rng: np.random.Generator, max_tries: int = 1000) -> Rank2Basis:
    """
    随机约化基：alpha, beta, gamma, delta 取 [-1, 1] 上的均匀分布，退化的样本重采
    """
    for _ in range(max_tries):
        alpha, beta, gamma, delta = rng.uniform(-1.0, 1.0, size=4)
        b1 = np.array([alpha, beta, -alpha - beta])
        b2 = np.array([gamma, delta, -gamma - delta])
        try:
            basis = reduce_basis_linf_rank2(b1, b2)
        except LatticeError:
            continue
        if not basis.degenerate:
            return basis
    raise LatticeError(f"{max_tries} 次采样仍未得到非退化的基")
