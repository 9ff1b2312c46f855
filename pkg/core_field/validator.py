"""
域数据不变量检查
"""
import itertools
import logging
from typing import List, Optional, Tuple

import numpy as np

from .errors import FieldValidationError

logger = logging.getLogger(__name__)


class FieldValidator:
    """域数据校验器"""

    def __init__(self, tolerance: float = 1e-9, integrality_tolerance: float = 1e-6):
        self.tolerance = tolerance
        self.integrality_tolerance = integrality_tolerance
        self.failures: List[Tuple[str, str]] = []

    def _fail(self, invariant: str, message: str) -> bool:
        logger.warning(f"域数据不满足 [{invariant}]: {message}")
        self.failures.append((invariant, message))
        return False

    def check_shapes(self, field_data) -> bool:
        """矩阵形状与符号一致"""
        n = field_data.signature.n
        rank = field_data.signature.unit_rank
        basis = field_data.integral_basis_embeddings
        if basis.shape != (n, n):
            return self._fail("shape", f"整基嵌入矩阵形状 {basis.shape}，应为 ({n}, {n})")
        if field_data.unit_generators.shape != (rank, n):
            return self._fail(
                "shape",
                f"需要 {rank} 个单位生成元（每个 {n} 个嵌入），实际形状 {field_data.unit_generators.shape}",
            )
        if field_data.galois_perms.shape != (n, n):
            return self._fail("shape", f"需要 {n} 个长度为 {n} 的置换")
        if field_data.torsion_order < 2 or field_data.torsion_order % 2:
            return self._fail("shape", f"挠阶必须是 >= 2 的偶数，实际 {field_data.torsion_order}")
        arrays = [basis, field_data.unit_generators]
        if not all(np.all(np.isfinite(a)) for a in arrays):
            return self._fail("shape", "嵌入中含非有限数")
        return True

    def check_real_rows(self, field_data) -> bool:
        """前 r 行是实嵌入"""
        r = field_data.signature.r
        for label, matrix in self._row_matrices(field_data):
            if r and np.max(np.abs(matrix[:r].imag), initial=0.0) > self.tolerance * self._scale(matrix):
                return self._fail("real rows", f"{label} 的实嵌入行带有虚部")
        return True

    def check_conjugate_rows(self, field_data) -> bool:
        """第 r+s+k 行是第 r+k 行的复共轭"""
        r, s = field_data.signature.r, field_data.signature.s
        for label, matrix in self._row_matrices(field_data):
            reps = matrix[r:r + s]
            conjugates = matrix[r + s:r + 2 * s]
            if s and np.max(np.abs(conjugates - np.conj(reps))) > self.tolerance * self._scale(matrix):
                return self._fail("conjugate rows", f"{label} 的共轭行与代表行不匹配")
        return True

    def check_generator_norms(self, field_data) -> bool:
        """每个单位生成元的范数绝对值为 1"""
        for k, unit in enumerate(field_data.unit_generators):
            norm = float(np.prod(np.abs(unit)))
            if abs(norm - 1.0) > self.tolerance:
                return self._fail("generator norm", f"第 {k + 1} 个生成元 |Nm| = {norm:.12g} != 1")
        return True

    def check_discriminant(self, field_data) -> bool:
        """det(B)^2 是非零整数，符号为 (-1)^s"""
        det = np.linalg.det(field_data.integral_basis_embeddings)
        disc = det * det
        magnitude = abs(disc)
        if magnitude < 1 - self.integrality_tolerance:
            return self._fail("discriminant", f"|det|^2 = {magnitude:.6g} 过小，整基嵌入矩阵退化")
        if abs(disc.imag) > self.integrality_tolerance * magnitude:
            return self._fail("discriminant", f"判别式不是实数: {disc}")
        nearest = round(disc.real)
        if abs(disc.real - nearest) > self.integrality_tolerance * max(1.0, magnitude):
            return self._fail("discriminant", f"判别式 {disc.real:.12g} 不是整数")
        expected_sign = -1 if field_data.signature.s % 2 else 1
        if nearest * expected_sign <= 0:
            return self._fail("discriminant", f"判别式 {nearest} 的符号与 s={field_data.signature.s} 不符")
        return True

    def check_galois_group(self, field_data) -> bool:
        """置换构成 n 阶群：合法置换、含单位元、互不相同、对复合封闭"""
        n = field_data.signature.n
        perms = [tuple(int(v) for v in p) for p in field_data.galois_perms]
        identity = tuple(range(n))
        for p in perms:
            if sorted(p) != list(range(n)):
                return self._fail("galois group", f"{[v + 1 for v in p]} 不是 1..{n} 的置换")
        if len(set(perms)) != n:
            return self._fail("galois group", "置换有重复")
        if identity not in perms:
            return self._fail("galois group", "缺少恒等置换")
        stored = set(perms)
        for p, q in itertools.product(perms, repeat=2):
            composed = tuple(p[q[j]] for j in range(n))
            if composed not in stored:
                return self._fail("galois group", "置换集合对复合不封闭")
        return True

    def check_galois_action(self, field_data) -> bool:
        """每个置换把整基映到整基的整系数组合"""
        basis = field_data.integral_basis_embeddings
        inverse = np.linalg.inv(basis)
        for p in field_data.galois_perms:
            matrix = inverse @ basis[p]
            if np.max(np.abs(matrix - np.round(matrix.real))) > self.integrality_tolerance:
                return self._fail(
                    "galois action",
                    f"置换 {[int(v) + 1 for v in p]} 不是域自同构（整基像不是整系数组合）",
                )
        return True

    def check_torsion(self, field_data) -> bool:
        """挠生成元的所有嵌入模为 1，且 zeta^T = 1"""
        zeta = field_data.torsion_generator
        if zeta is None:
            return True
        if zeta.shape != (field_data.signature.n,):
            return self._fail("torsion", f"挠生成元应有 {field_data.signature.n} 个嵌入")
        if np.max(np.abs(np.abs(zeta) - 1)) > self.tolerance:
            return self._fail("torsion", "挠生成元不是单位根")
        if np.max(np.abs(zeta ** field_data.torsion_order - 1)) > 1e3 * self.tolerance:
            return self._fail("torsion", f"挠生成元的阶不是 {field_data.torsion_order}")
        return True

    def validate(self, field_data) -> None:
        """
        依次执行全部检查，遇到第一个失败即抛出

        Raises:
            FieldValidationError: 指明违反的不变量
        """
        self.failures = []
        checks = [
            self.check_shapes,
            self.check_real_rows,
            self.check_conjugate_rows,
            self.check_generator_norms,
            self.check_discriminant,
            self.check_galois_group,
            self.check_galois_action,
            self.check_torsion,
        ]
        for check in checks:
            if not check(field_data):
                invariant, message = self.failures[-1]
                raise FieldValidationError(invariant, f"{field_data.name}: {message}")

    @staticmethod
    def _row_matrices(field_data):
        yield "整基嵌入矩阵", field_data.integral_basis_embeddings
        yield "单位生成元", field_data.unit_generators.T
        if field_data.torsion_generator is not None:
            yield "挠生成元", field_data.torsion_generator.reshape(-1, 1)

    @staticmethod
    def _scale(matrix: np.ndarray) -> float:
        return max(1.0, float(np.max(np.abs(matrix), initial=0.0)))
