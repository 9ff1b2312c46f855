"""
域文件（JSON）的读写与二次域生成

数值一律以十进制字符串存放，位数为 precision_digits；复数写成 [re, im]。
"""
import json
import logging
import math
from pathlib import Path
from typing import List, Optional, Sequence, Union

import mpmath
import numpy as np
from pydantic import BaseModel, Field, ValidationError, field_validator

from core_field import FieldData, FieldValidationError, Signature

from .pell import pell_fundamental_unit

logger = logging.getLogger(__name__)

Number = Union[str, float, int]
ComplexPair = List[Number]


class FieldFile(BaseModel):
    """域文件"""
    name: str = Field(description="域名称")
    r: int = Field(ge=0, description="实嵌入个数")
    s: int = Field(ge=0, description="复嵌入对数")
    precision_digits: int = Field(default=16, ge=1, description="数值的有效位数")
    integral_basis: List[List[ComplexPair]] = Field(
        description="n x n 行优先，第 i 行第 j 列为 sigma_i(omega_j)"
    )
    unit_generators: List[List[ComplexPair]] = Field(description="r+s-1 个单位生成元的 n 元嵌入组")
    torsion_order: int = Field(ge=2, description="单位根个数")
    galois_perms: List[List[int]] = Field(description="n 个 1 起始的置换")
    regulator_hint: Optional[float] = Field(default=None, description="参考调节子")
    torsion_generator: Optional[List[ComplexPair]] = Field(default=None, description="单位根生成元的 n 元嵌入组")
    description: Optional[str] = Field(default=None, description="说明")

    @field_validator("integral_basis", "unit_generators")
    @classmethod
    def _check_matrix_entries(cls, rows):
        for row in rows:
            for entry in row:
                _to_complex(entry)
        return rows

    @field_validator("torsion_generator")
    @classmethod
    def _check_vector_entries(cls, entries):
        if entries is not None:
            for entry in entries:
                _to_complex(entry)
        return entries

    def to_field_data(self, source: Optional[str] = None) -> FieldData:
        """
        转成 FieldData，并执行全部不变量检查

        Raises:
            FieldValidationError: 违反的不变量名见 .invariant
        """
        try:
            signature = Signature(self.r, self.s)
        except ValueError as e:
            raise FieldValidationError("shape", str(e))
        n = signature.n
        basis = _to_matrix(self.integral_basis)
        units = _to_matrix(self.unit_generators) if self.unit_generators else np.zeros((0, n), dtype=complex)
        try:
            perms = np.array(self.galois_perms, dtype=int) - 1
        except ValueError as e:
            raise FieldValidationError("galois group", f"置换列表形状不规则: {e}")
        zeta = None
        if self.torsion_generator is not None:
            zeta = np.array([_to_complex(e) for e in self.torsion_generator], dtype=complex)
        return FieldData(
            name=self.name,
            signature=signature,
            integral_basis_embeddings=basis,
            unit_generators=units,
            torsion_order=self.torsion_order,
            galois_perms=perms,
            precision_digits=self.precision_digits,
            torsion_generator=zeta,
            regulator_hint=self.regulator_hint,
            source=source,
        )


def _to_complex(entry: Sequence[Number]) -> complex:
    if len(entry) != 2:
        raise ValueError(f"复数必须写成 [re, im]，收到 {entry}")
    re, im = float(entry[0]), float(entry[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise ValueError(f"非有限数 {entry}")
    return complex(re, im)


def _to_matrix(rows: List[List[ComplexPair]]) -> np.ndarray:
    try:
        return np.array([[_to_complex(e) for e in row] for row in rows], dtype=complex)
    except ValueError as e:
        raise FieldValidationError("shape", f"矩阵形状不规则: {e}")


def parse_field_file(text: str) -> FieldFile:
    try:
        return FieldFile.model_validate_json(text)
    except ValidationError as e:
        raise FieldValidationError("parse", f"域文件格式错误: {e.errors()[0]['msg']} @ {e.errors()[0]['loc']}")


def load_field_file(path: Union[str, Path]) -> FieldData:
    """
    读取并校验域文件

    Raises:
        FileNotFoundError: 文件不存在
        FieldValidationError: 解析失败或违反不变量
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"域文件不存在: {path}")
    field_file = parse_field_file(path.read_text(encoding="utf-8"))
    field_data = field_file.to_field_data(source=str(path))
    logger.info(f"加载域文件 {path}: {field_data}")
    return field_data


def dump_field_file(field_file: FieldFile) -> str:
    return json.dumps(field_file.model_dump(exclude_none=True), indent=2, ensure_ascii=False) + "\n"


def write_field_file(field_file: FieldFile, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_field_file(field_file), encoding="utf-8")
    logger.info(f"写出域文件 {path}")
    return path


def format_number(x, digits: int) -> str:
    return mpmath.nstr(mpmath.mpf(x), digits)


def format_complex(z, digits: int) -> List[str]:
    z = mpmath.mpc(z)
    return [format_number(z.real, digits), format_number(z.imag, digits)]


def gen_quadratic_field_file(d: int, precision_digits: int = 30) -> FieldFile:
    """
    实二次域 Q(sqrt d) 的域文件：整基 {1, omega}，Pell 基本单位，交换置换

    Raises:
        PellError: d 不合法
    """
    pell = pell_fundamental_unit(d)
    with mpmath.workdps(precision_digits + 10):
        root = mpmath.sqrt(d)
        if d % 4 == 1:
            omega, omega_conj = (1 + root) / 2, (1 - root) / 2
        else:
            omega, omega_conj = root, -root
        unit = pell.value(precision_digits + 10)
        unit_conj = pell.conjugate_value(precision_digits + 10)
        basis = [
            [format_complex(1, precision_digits), format_complex(omega, precision_digits)],
            [format_complex(1, precision_digits), format_complex(omega_conj, precision_digits)],
        ]
        units = [[format_complex(unit, precision_digits), format_complex(unit_conj, precision_digits)]]

    return FieldFile(
        name=f"qsqrt{d}",
        r=2,
        s=0,
        precision_digits=precision_digits,
        integral_basis=basis,
        unit_generators=units,
        torsion_order=2,
        galois_perms=[[1, 2], [2, 1]],
        regulator_hint=pell.regulator,
        description=f"Q(sqrt {d})，基本单位 {pell}",
    )
