"""
K_R = R^r x C^s 上的基本运算

元素统一存成长度 r+s 的复数向量：前 r 个坐标虚部为 0，后 s 个坐标是
每对复共轭嵌入中的代表。迹与对数嵌入对复坐标取权重 2。
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence, Union

import numpy as np

from .errors import SignatureMismatchError, ZeroCoordinateError

logger = logging.getLogger(__name__)

# 默认绝对容差
TOLERANCE = 1e-9


@dataclass(frozen=True)
class Signature:
    """域的符号 (r, s)"""
    r: int
    s: int

    def __post_init__(self):
        if self.r < 0 or self.s < 0:
            raise ValueError(f"符号非法: r={self.r}, s={self.s}")
        if self.n < 2:
            raise ValueError(f"域次数必须 >= 2，当前 n={self.n}")

    @property
    def n(self) -> int:
        return self.r + 2 * self.s

    @property
    def dim(self) -> int:
        """K_R 的坐标个数 r+s"""
        return self.r + self.s

    @property
    def unit_rank(self) -> int:
        return self.r + self.s - 1

    @cached_property
    def weights(self) -> np.ndarray:
        return np.array([1.0] * self.r + [2.0] * self.s)

    def __str__(self):
        return f"(r={self.r}, s={self.s})"


@dataclass(frozen=True, eq=False)
class KREElement:
    """K_R 中的点"""
    signature: Signature
    coords: np.ndarray

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=complex).reshape(-1)
        if coords.shape[0] != self.signature.dim:
            raise SignatureMismatchError(
                f"坐标个数 {coords.shape[0]} 与符号 {self.signature} 不符"
            )
        if not np.all(np.isfinite(coords)):
            raise ValueError("K_R 元素包含非有限坐标")
        if self.signature.r and np.any(np.abs(coords[: self.signature.r].imag) > TOLERANCE):
            raise ValueError("实坐标带有非零虚部")
        coords = coords.copy()
        coords[: self.signature.r] = coords[: self.signature.r].real
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_parts(
        cls,
        signature: Signature,
        real_part: Sequence[float],
        complex_part: Sequence[complex] = (),
    ) -> "KREElement":
        real_part = list(real_part)
        complex_part = list(complex_part)
        if len(real_part) != signature.r or len(complex_part) != signature.s:
            raise SignatureMismatchError(
                f"分量个数 ({len(real_part)}, {len(complex_part)}) 与符号 {signature} 不符"
            )
        return cls(signature, np.array(real_part + complex_part, dtype=complex))

    @classmethod
    def one(cls, signature: Signature) -> "KREElement":
        return cls(signature, np.ones(signature.dim, dtype=complex))

    @property
    def real_part(self) -> np.ndarray:
        return self.coords[: self.signature.r].real

    @property
    def complex_part(self) -> np.ndarray:
        return self.coords[self.signature.r:]

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.coords)

    def allclose(self, other: "KREElement", tol: float = TOLERANCE) -> bool:
        return self.signature == other.signature and bool(
            np.allclose(self.coords, other.coords, rtol=tol, atol=tol)
        )

    def __repr__(self):
        return f"KREElement({self.signature}, {np.round(self.coords, 6).tolist()})"


@dataclass(frozen=True, eq=False)
class TotallyPositiveElement:
    """全正元素 a = (a_1, ..., a_{r+s})，所有坐标为正实数"""
    signature: Signature
    coords: np.ndarray

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=float).reshape(-1).copy()
        if coords.shape[0] != self.signature.dim:
            raise SignatureMismatchError(
                f"坐标个数 {coords.shape[0]} 与符号 {self.signature} 不符"
            )
        if not np.all(np.isfinite(coords)) or np.any(coords <= 0):
            raise ValueError(f"元素不是全正的: {coords.tolist()}")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    def as_kre(self) -> KREElement:
        return KREElement(self.signature, self.coords.astype(complex))

    def times_moduli_squared(self, moduli_sq: np.ndarray) -> "TotallyPositiveElement":
        """返回 a * v v*，moduli_sq 为 |v_j|^2"""
        return TotallyPositiveElement(self.signature, self.coords * np.asarray(moduli_sq))

    def __repr__(self):
        return f"TotallyPositiveElement({self.signature}, {np.round(self.coords, 6).tolist()})"


KRELike = Union[KREElement, TotallyPositiveElement]


def _check_same_signature(a: KRELike, b: KRELike):
    if a.signature != b.signature:
        raise SignatureMismatchError(f"符号不一致: {a.signature} vs {b.signature}")


def kre_mul(a: KREElement, b: KREElement) -> KREElement:
    """逐坐标乘法"""
    _check_same_signature(a, b)
    return KREElement(a.signature, a.coords * b.coords)


def involution(a: KREElement) -> KREElement:
    """实坐标不变，复坐标取共轭"""
    return KREElement(a.signature, np.conj(a.coords))


def trace(a: KRELike) -> float:
    """Tr(a) = sum_{j<=r} Re(a_j) + 2 sum_{j>r} Re(a_j)"""
    return float(np.dot(a.signature.weights, np.real(a.coords)))


def trace_form(a: TotallyPositiveElement, x: KREElement) -> float:
    """
    迹型 Tr(a x x*)

    Args:
        a: 全正元素
        x: K_R 元素

    Returns:
        sum_{j<=r} a_j |x_j|^2 + 2 sum_{j>r} a_j |x_j|^2
    """
    _check_same_signature(a, x)
    return float(np.dot(a.signature.weights * a.coords, np.abs(x.coords) ** 2))


def _nonzero_moduli(x: KREElement) -> np.ndarray:
    moduli = np.abs(x.coords)
    if np.any(moduli == 0):
        raise ZeroCoordinateError(f"坐标中含 0: {x}")
    return moduli


def log_embedding(x: KREElement) -> np.ndarray:
    """Log(x) = (log|x_1|, ..., log|x_r|, 2log|x_{r+1}|, ..., 2log|x_{r+s}|)"""
    return x.signature.weights * np.log(_nonzero_moduli(x))


def weil_height(x: KREElement, n: Optional[int] = None) -> float:
    """对数 Weil 高度 h(x) = (1/n) sum w_j log+|x_j|"""
    degree = n if n is not None else x.signature.n
    logs = np.log(_nonzero_moduli(x))
    return float(np.dot(x.signature.weights, np.maximum(logs, 0.0)) / degree)


def _moduli_of(u: Union[KREElement, Sequence[complex], np.ndarray]) -> np.ndarray:
    if isinstance(u, KREElement):
        return u.moduli
    return np.abs(np.asarray(u, dtype=complex).reshape(-1))


def is_pisot(u: Union[KREElement, Sequence[complex], np.ndarray], tol: float = TOLERANCE) -> bool:
    """
    按给定顺序判断 Pisot 性质：|u_1| > 1，其余 r+s-1 个代表 |u_j| < 1

    不做重排；需要"最大模在前"的调用方先用 max_modulus_first。
    """
    moduli = _moduli_of(u)
    if moduli.shape[0] < 2:
        return False
    return bool(moduli[0] > 1 + tol and np.all(moduli[1:] < 1 - tol))


def max_modulus_first(u: Union[KREElement, Sequence[complex], np.ndarray]) -> np.ndarray:
    """把模最大的坐标移到第一位，其余坐标保持原顺序"""
    coords = u.coords if isinstance(u, KREElement) else np.asarray(u, dtype=complex).reshape(-1)
    k = int(np.argmax(np.abs(coords)))
    if k == 0:
        return np.array(coords, dtype=complex)
    return np.concatenate([coords[k:k + 1], coords[:k], coords[k + 1:]]).astype(complex)
