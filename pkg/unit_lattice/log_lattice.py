"""
对数单位格 Lambda_K = Log(O_K^*) 及单位的指数表示

单位统一用 UnitExponentVector（生成元指数 + 挠指标）表示，嵌入与模长都由指数重新计算，
避免连乘带来的数值漂移。
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import List, Sequence, Tuple

import numpy as np

from core_field import FieldData, log_embedding, permute_embeddings

from .errors import LatticeError

logger = logging.getLogger(__name__)

# 行和为零的容差（相对于基向量的尺度）
HYPERPLANE_TOL = 1e-9
# Gram 行列式的相对退化阈值
DEPENDENCE_TOL = 1e-12
# 由对数坐标恢复指数时允许的残差
EXPONENT_RECOVERY_TOL = 1e-6


@dataclass(frozen=True)
class UnitExponentVector:
    """单位 zeta^t * prod g_i^{e_i}"""
    exponents: Tuple[int, ...]
    torsion_index: int = 0

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        object.__setattr__(self, "torsion_index", int(self.torsion_index))

    @classmethod
    def zero(cls, rank: int) -> "UnitExponentVector":
        return cls((0,) * rank, 0)

    @property
    def rank(self) -> int:
        return len(self.exponents)

    def as_array(self) -> np.ndarray:
        return np.array(self.exponents, dtype=np.int64)

    def combine(self, other: "UnitExponentVector", torsion_order: int) -> "UnitExponentVector":
        """两个单位相乘"""
        if other.rank != self.rank:
            raise LatticeError(f"指数向量长度不一致: {self.rank} vs {other.rank}")
        return UnitExponentVector(
            tuple(a + b for a, b in zip(self.exponents, other.exponents)),
            (self.torsion_index + other.torsion_index) % torsion_order,
        )

    def inverse(self, torsion_order: int) -> "UnitExponentVector":
        return UnitExponentVector(
            tuple(-e for e in self.exponents), (-self.torsion_index) % torsion_order
        )


@dataclass(frozen=True, eq=False)
class LogUnitLattice:
    """
    迹零超平面 V 内的满秩格

    basis 形状为 (rank, r+s)，每行是一个生成元的对数嵌入。
    """
    basis: np.ndarray

    def __post_init__(self):
        basis = np.array(self.basis, dtype=float)
        if basis.ndim != 2 or basis.shape[0] == 0:
            raise LatticeError("格的秩为 0，无法构造对数单位格")
        if basis.shape[0] >= basis.shape[1]:
            raise LatticeError(
                f"秩 {basis.shape[0]} 必须小于环境维数 {basis.shape[1]}（格位于迹零超平面内）"
            )
        if not np.all(np.isfinite(basis)):
            raise LatticeError("基向量含非有限坐标")

        for i, row in enumerate(basis):
            scale = max(1.0, float(np.max(np.abs(row))))
            if abs(float(row.sum())) > HYPERPLANE_TOL * scale:
                raise LatticeError(f"第 {i + 1} 个基向量坐标和 {row.sum():.3e} 不为 0")

        gram = basis @ basis.T
        det = float(np.linalg.det(gram))
        scale = float(np.prod(np.diag(gram)))
        if scale == 0 or det < DEPENDENCE_TOL * scale:
            raise LatticeError(f"基向量线性相关（Gram 行列式 {det:.3e}）")

        basis.setflags(write=False)
        gram.setflags(write=False)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_gram", gram)
        object.__setattr__(self, "_volume", float(np.sqrt(det)))

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[1]

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    @property
    def gram(self) -> np.ndarray:
        return self._gram

    @property
    def volume(self) -> float:
        return self._volume

    @cached_property
    def dual(self) -> np.ndarray:
        """伪逆，形状 (r+s, rank)：x @ dual 给出 x 在基下的系数"""
        return np.linalg.pinv(self.basis)

    @cached_property
    def dual_l1(self) -> np.ndarray:
        """
        对偶基各列的 l1 范数

        对 V 中的 x = e @ basis 有 |e_i| <= ||x||_inf * dual_l1[i]。
        """
        return np.abs(self.dual).sum(axis=0)

    @cached_property
    def basis_linf(self) -> np.ndarray:
        return np.max(np.abs(self.basis), axis=1)

    def point(self, exponents: Sequence[int]) -> np.ndarray:
        return np.asarray(exponents, dtype=float) @ self.basis

    def coefficients(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(x, dtype=float) @ self.dual

    def scaled(self, factor: float) -> "LogUnitLattice":
        return LogUnitLattice(self.basis * factor)

    def __repr__(self):
        return f"LogUnitLattice(rank={self.rank}, dim={self.ambient_dim}, volume={self.volume:.6f})"


@dataclass(frozen=True)
class RegulatorReport:
    standard: float
    volume: float
    scaled_volume: float


def build_lattice(field_data: FieldData) -> LogUnitLattice:
    """
    由单位生成元构造对数单位格

    Raises:
        LatticeError: 秩为 0 或生成元对数线性相关
    """
    if field_data.rank == 0:
        raise LatticeError(f"{field_data.name} 的单位秩为 0（虚二次域），不存在对数单位格")
    rows = [log_embedding(field_data.project(g)) for g in field_data.unit_generators]
    lattice = LogUnitLattice(np.vstack(rows))
    logger.debug(f"{field_data.name}: 构造对数单位格 {lattice}")
    return lattice


def regulator(lattice: LogUnitLattice) -> RegulatorReport:
    """
    调节子

    standard 为删去最后一个坐标后基矩阵行列式的绝对值；对加权对数嵌入它等于
    volume / sqrt(r+s)。scaled_volume = volume * sqrt(r+s)，即按 Vol = R / sqrt(r+s) 反推的调节子。
    """
    if lattice.rank == 0:
        raise LatticeError("秩为 0 的格没有调节子")
    standard = abs(float(np.linalg.det(lattice.basis[:, :-1])))
    root = float(np.sqrt(lattice.ambient_dim))
    return RegulatorReport(
        standard=standard,
        volume=lattice.volume,
        scaled_volume=lattice.volume * root,
    )


def _log_moduli(field_data: FieldData) -> np.ndarray:
    """(rank, r+s) 矩阵：生成元前 r+s 个嵌入的 log|.|（不加权）"""
    dim = field_data.signature.dim
    return np.log(np.abs(field_data.unit_generators[:, :dim]))


def unit_moduli_squared(field_data: FieldData, exponents: Sequence[int]) -> np.ndarray:
    """|v_j|^2，j = 1..r+s，直接由指数计算"""
    e = np.asarray(exponents, dtype=float)
    return np.exp(2.0 * (e @ _log_moduli(field_data)))


def unit_embedding(field_data: FieldData, unit: UnitExponentVector) -> np.ndarray:
    """单位的全部 n 个嵌入"""
    if unit.rank != field_data.rank:
        raise LatticeError(f"指数个数 {unit.rank} 与单位秩 {field_data.rank} 不符")
    full = np.ones(field_data.n, dtype=complex)
    for g, e in zip(field_data.unit_generators, unit.exponents):
        if e:
            full = full * g ** e
    if unit.torsion_index % field_data.torsion_order:
        zeta = field_data.torsion_embedding
        if zeta is None:
            raise LatticeError(f"{field_data.name} 未提供挠生成元，无法表示挠指标 {unit.torsion_index}")
        full = full * zeta ** unit.torsion_index
    return full


def exponents_of_unit(
    field_data: FieldData,
    lattice: LogUnitLattice,
    full: Sequence[complex],
) -> UnitExponentVector:
    """
    由 n 元嵌入组恢复单位的指数与挠指标

    Raises:
        LatticeError: 对数向量不在格上（不是生成元生成的单位）
    """
    full = np.asarray(full, dtype=complex).reshape(-1)
    logs = log_embedding(field_data.project(full))
    coeffs = lattice.coefficients(logs)
    exponents = np.round(coeffs).astype(np.int64)
    residual = float(np.max(np.abs(logs - lattice.point(exponents))))
    if residual > EXPONENT_RECOVERY_TOL * max(1.0, float(np.max(np.abs(logs)))):
        raise LatticeError(f"对数向量不在单位格上（残差 {residual:.3e}）")

    free_part = unit_embedding(field_data, UnitExponentVector(tuple(exponents), 0))
    torsion = full / free_part
    zeta = field_data.torsion_embedding
    if zeta is None:
        logger.debug(f"{field_data.name} 无挠生成元，挠指标记为 0")
        return UnitExponentVector(tuple(exponents), 0)

    for t in range(field_data.torsion_order):
        if np.max(np.abs(torsion - zeta ** t)) < EXPONENT_RECOVERY_TOL:
            return UnitExponentVector(tuple(exponents), t)
    raise LatticeError("商不是挠单位，无法确定挠指标")


def conjugate_unit_exponents(
    field_data: FieldData,
    lattice: LogUnitLattice,
    unit: UnitExponentVector,
) -> List[UnitExponentVector]:
    """单位在全部 n 个自同构下的像，按自同构编号 1..n 排列"""
    full = unit_embedding(field_data, unit)
    return [
        exponents_of_unit(field_data, lattice, permute_embeddings(field_data, i, full))
        for i in range(1, field_data.n + 1)
    ]
