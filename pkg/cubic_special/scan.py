"""
秩 2 约化基上短向量的例外集检查与三次域的面候选
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .basis import Rank2Basis, random_reduced_basis

logger = logging.getLogger(__name__)

# (|x|, |y|) 的例外集
EXCEPTIONAL_SET = frozenset({(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)})
STRICT_TOL = 1e-12


def _coefficient_grid(bound: int) -> np.ndarray:
    axis = np.arange(-bound, bound + 1)
    xs, ys = np.meshgrid(axis, axis, indexing="ij")
    return np.stack([xs.reshape(-1), ys.reshape(-1)], axis=1)


def _grid_norms(basis: Rank2Basis, grid: np.ndarray) -> np.ndarray:
    vectors = grid @ basis.matrix
    return np.max(np.abs(vectors), axis=1)


def _outside_exceptional(grid: np.ndarray) -> np.ndarray:
    return np.array([(abs(int(x)), abs(int(y))) not in EXCEPTIONAL_SET for x, y in grid])


def lemma6_scan(basis: Rank2Basis, search_bound: int = 10) -> List[Tuple[int, int]]:
    """
    返回 |x|, |y| <= search_bound 中 (|x|,|y|) 不在例外集却满足 ||x b1 + y b2||_inf < 2 lambda 的 (x, y)

    对满足约化条件且非退化的基，结果应为空。
    """
    if not basis.satisfies_reduction():
        logger.warning("基不满足约化条件，扫描结果没有意义")
    grid = _coefficient_grid(search_bound)
    norms = _grid_norms(basis, grid)
    short = norms < 2 * basis.lambda_inf * (1 - STRICT_TOL)
    hits = grid[short & _outside_exceptional(grid)]
    return [(int(x), int(y)) for x, y in hits]


@dataclass(frozen=True)
class ScanSample:
    lambda_inf: float
    min_ratio: float
    violations: int


@dataclass(frozen=True)
class ScanSummary:
    samples: int
    seed: Optional[int]
    search_bound: int
    violations: int
    worst_ratio: float
    per_sample: List[ScanSample] = field(default_factory=list)


def scan_random_bases(samples: int, seed: Optional[int] = 42, search_bound: int = 10) -> ScanSummary:
    """
    随机约化基上的批量扫描；min_ratio 为例外集以外 ||v||_inf / lambda 的最小值
    """
    rng = np.random.default_rng(seed)
    grid = _coefficient_grid(search_bound)
    outside = _outside_exceptional(grid)
    per_sample: List[ScanSample] = []
    total = 0
    for _ in range(samples):
        basis = random_reduced_basis(rng)
        norms = _grid_norms(basis, grid)[outside]
        violations = int(np.count_nonzero(norms < 2 * basis.lambda_inf * (1 - STRICT_TOL)))
        total += violations
        per_sample.append(ScanSample(
            lambda_inf=basis.lambda_inf,
            min_ratio=float(norms.min() / basis.lambda_inf),
            violations=violations,
        ))
    worst = min((s.min_ratio for s in per_sample), default=float("inf"))
    logger.info(f"扫描 {samples} 个随机基: 违例 {total} 个, 最小比值 {worst:.6f}")
    return ScanSummary(
        samples=samples,
        seed=seed,
        search_bound=search_bound,
        violations=total,
        worst_ratio=worst,
        per_sample=per_sample,
    )


def cubic_t_bound(u_modulus: float) -> float:
    """全实三次域 Pisot 单位的 t_K(u) < sqrt(1 + (u^2 - 1)^2)"""
    if u_modulus <= 1:
        raise ValueError(f"需要 |u| > 1，当前 {u_modulus}")
    return math.sqrt(1 + (u_modulus ** 2 - 1) ** 2)


@dataclass(frozen=True)
class CubicFacetCandidates:
    threshold: float
    candidates: List[Tuple[int, int]]
    contained: bool


def cubic_facet_candidates(
    basis: Rank2Basis,
    lambda_inf: Optional[float] = None,
    search_bound: int = 10,
) -> CubicFacetCandidates:
    """
    ||x b1 + y b2||_inf <= (1/2) log(1 + (e^{2 lambda} - 1)^2) 的非零整数解，
    contained 表示所有解的 (|x|,|y|) 都在例外集中；
    约化、非退化的基在不覆盖 lambda 时 contained 恒为 True
    """
    lam = basis.lambda_inf if lambda_inf is None else lambda_inf
    threshold = 0.5 * math.log1p(math.expm1(2 * lam) ** 2)
    grid = _coefficient_grid(search_bound)
    norms = _grid_norms(basis, grid)
    nonzero = np.any(grid != 0, axis=1)
    hits = grid[(norms <= threshold * (1 + STRICT_TOL)) & nonzero]
    candidates = [(int(x), int(y)) for x, y in hits]
    contained = all((abs(x), abs(y)) in EXCEPTIONAL_SET for x, y in candidates)
    if not contained:
        logger.info(f"lambda={lam:.4f} 时候选不全在例外集中（基未约化，或 lambda 大于基的最短长度）")
    return CubicFacetCandidates(threshold=threshold, candidates=candidates, contained=contained)
