"""
域数据：整基嵌入矩阵、单位生成元、挠部分与 Galois 置换
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Optional, Sequence, Union

import numpy as np

from .errors import GaloisIndexError
from .kre import TOLERANCE, KREElement, Signature

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FieldData:
    """
    Galois 数域的数值描述

    行顺序: sigma_1..sigma_r, sigma_{r+1}..sigma_{r+s}, 然后是后 s 个的共轭。
    integral_basis_embeddings[i, j] = sigma_i(omega_j)。
    galois_perms[g][j] = k 表示 sigma_j o g = sigma_k（0 起始）。
    """
    name: str
    signature: Signature
    integral_basis_embeddings: np.ndarray
    unit_generators: np.ndarray
    torsion_order: int
    galois_perms: np.ndarray
    precision_digits: int = 16
    torsion_generator: Optional[np.ndarray] = None
    regulator_hint: Optional[float] = None
    source: Any = field(default=None, repr=False)

    def __post_init__(self):
        n = self.signature.n
        basis = np.asarray(self.integral_basis_embeddings, dtype=complex)
        units = np.asarray(self.unit_generators, dtype=complex).reshape(-1, n)
        perms = np.asarray(self.galois_perms, dtype=int)
        object.__setattr__(self, "integral_basis_embeddings", basis)
        object.__setattr__(self, "unit_generators", units)
        object.__setattr__(self, "galois_perms", perms)
        if self.torsion_generator is not None:
            object.__setattr__(
                self, "torsion_generator", np.asarray(self.torsion_generator, dtype=complex)
            )

        from .validator import FieldValidator
        FieldValidator(tolerance=TOLERANCE).validate(self)
        logger.debug(f"域数据校验通过: {self.name} {self.signature}")

    @property
    def n(self) -> int:
        return self.signature.n

    @property
    def rank(self) -> int:
        return self.signature.unit_rank

    @cached_property
    def basis_inverse(self) -> np.ndarray:
        return np.linalg.inv(self.integral_basis_embeddings)

    @cached_property
    def discriminant(self) -> int:
        det = np.linalg.det(self.integral_basis_embeddings)
        return int(round((det * det).real))

    @cached_property
    def torsion_embedding(self) -> Optional[np.ndarray]:
        """挠生成元 zeta 的全部 n 个嵌入；未知时为 None"""
        if self.torsion_generator is not None:
            return self.torsion_generator
        if self.torsion_order == 2:
            return -np.ones(self.n, dtype=complex)
        return None

    def embed(self, coeffs: Sequence[int]) -> np.ndarray:
        """整基坐标 -> 全部 n 个嵌入"""
        return self.integral_basis_embeddings @ np.asarray(coeffs, dtype=float)

    def project(self, full: np.ndarray) -> KREElement:
        """n 元嵌入组 -> K_R 中的前 r+s 个坐标"""
        full = np.asarray(full, dtype=complex).reshape(-1)
        return KREElement(self.signature, full[: self.signature.dim])

    def __repr__(self):
        return f"FieldData({self.name}, {self.signature}, rank={self.rank})"


@dataclass(frozen=True, eq=False)
class IntegerElement:
    """O_K 中的元素：整基坐标加缓存的嵌入组"""
    coeffs: tuple
    embeddings: np.ndarray

    @classmethod
    def from_coeffs(cls, field_data: FieldData, coeffs: Sequence[int]) -> "IntegerElement":
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != field_data.n:
            raise ValueError(f"坐标个数 {len(coeffs)} 与域次数 {field_data.n} 不符")
        return cls(coeffs, field_data.embed(coeffs))

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)


def _resolve_perm(field_data: FieldData, automorphism: Union[int, Sequence[int]]) -> np.ndarray:
    if isinstance(automorphism, (int, np.integer)):
        i = int(automorphism)
        if not 1 <= i <= field_data.n:
            raise GaloisIndexError(f"自同构编号 {i} 超出范围 1..{field_data.n}")
        return field_data.galois_perms[i - 1]

    perm = np.asarray(automorphism, dtype=int)
    for stored in field_data.galois_perms:
        if np.array_equal(stored, perm):
            return stored
    raise GaloisIndexError(f"置换 {perm.tolist()} 不在 {field_data.name} 的 Galois 群中")


def permute_embeddings(
    field_data: FieldData,
    automorphism: Union[int, Sequence[int]],
    x: Union[IntegerElement, np.ndarray, Sequence[complex]],
) -> np.ndarray:
    """
    返回 g(x) 的全部 n 个嵌入

    Args:
        automorphism: 1 起始的自同构编号，或一个 0 起始的置换
        x: 整数元素或 n 元嵌入组
    """
    perm = _resolve_perm(field_data, automorphism)
    full = x.embeddings if isinstance(x, IntegerElement) else np.asarray(x, dtype=complex)
    full = full.reshape(-1)
    if full.shape[0] != field_data.n:
        raise ValueError(f"嵌入组长度 {full.shape[0]} 与域次数 {field_data.n} 不符")
    return full[perm]


def apply_galois(
    field_data: FieldData,
    i: Union[int, Sequence[int]],
    x: Union[IntegerElement, np.ndarray, Sequence[complex]],
) -> KREElement:
    """sigma_i(x) 嵌入 K_R：先按置换重排 n 元组，最后投影到前 r+s 个坐标"""
    return field_data.project(permute_embeddings(field_data, i, x))
