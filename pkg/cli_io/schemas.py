"""
CLI 输出模型

每个命令向标准输出写一个 JSON 对象，结构由下面的模型定义；schema 命令输出全部模型的 JSON Schema。
"""
from typing import Dict, List, Optional, Type

from pydantic import BaseModel, Field


class ErrorReport(BaseModel):
    error: str = Field(description="错误信息")
    invariant: Optional[str] = Field(default=None, description="违反的不变量或错误类别")


class UnitReport(BaseModel):
    exponents: List[int] = Field(description="生成元指数")
    torsion_index: int = Field(default=0, description="挠指标")


class GenFieldReport(BaseModel):
    command: str
    path: str = Field(description="写出的域文件")
    name: str
    degree: int
    regulator: float = Field(description="标准调节子")
    unit: Optional[str] = Field(default=None, description="基本单位（二次域）")


class PisotReport(BaseModel):
    command: str = "pisot"
    field: str
    epsilon: float = Field(description="实际使用的 epsilon（重试后可能翻倍）")
    unit: UnitReport
    embeddings: List[List[float]] = Field(description="n 个嵌入，[re, im]")
    log_vector: List[float]
    is_pisot: bool
    rho: float = Field(description="使用的 l_inf 覆盖半径")
    rho_source: str = Field(description="estimate 或 bound")
    window_low: float
    window_high: float
    window_holds: Optional[bool] = Field(default=None, description="rho 为精确估计时的窗口检查")
    attempts: int


class ReduceReport(BaseModel):
    command: str = "reduce"
    field: str
    delta: float
    unit: UnitReport = Field(description="使用的 Pisot 单位")
    applied: UnitReport = Field(description="净变换 a' = a v v*")
    reduced_element: List[float]
    rounds: int
    round_bound: int
    trace_initial: float
    trace_final: float
    t_delta: float
    trace_history: List[float]


class VerifyReport(BaseModel):
    command: str = "verify"
    field: str
    delta: float
    passed: bool = Field(description="两条不等式（不含复坐标权重修正）是否都成立")
    trace_final: float
    mu: float = Field(description="整数极小")
    argmin: List[int] = Field(description="极小点的整基坐标")
    trace_xx: float = Field(description="极小点的 Tr(xx*)")
    t_delta_squared: float
    min_nontorsion_trace: float
    factor: float
    trace_bound: float
    trace_ok: bool
    argmin_ok: bool
    coordinate_floor: float = Field(description="Tr(a') / t^2")
    coordinate_ok: bool = Field(description="min_i a'_i 是否不低于 coordinate_floor（不计入 passed）")
    rounds: int
    weighted_factor: Optional[float] = None
    weighted_trace_ok: Optional[bool] = None
    weighted_argmin_ok: Optional[bool] = None
    weighted_coordinate_ok: Optional[bool] = None


class FacetBoundReport(BaseModel):
    command: str = "facet-bound"
    r: int
    s: int
    regulator: float
    delta: float = Field(description="秩指数 1/2 或 1")
    term_geometric: float
    term_covering: float
    term_log: float
    bracket: float
    alternating_sum: float
    bound: float
    abstract_exponent: bool
    below_friedman: bool = Field(description="调节子是否低于 0.2052")


class LatticePointReport(BaseModel):
    exponents: List[int]
    log_vector: List[float]


class EnumerateFacetsReport(BaseModel):
    command: str = "enumerate-facets"
    field: str
    unit: UnitReport
    t_k: float
    radius: float
    candidates: List[LatticePointReport]
    half_counted: int
    with_signs: int
    cube_points: int
    slice_volume: float
    blichfeldt: float
    blichfeldt_ok: bool
    regulator: float
    facet_bound: float
    within_facet_bound: bool


class ScanSampleReport(BaseModel):
    lambda_inf: float
    min_ratio: float
    violations: int


class ShortVectorScanReport(BaseModel):
    command: str = "lemma6"
    samples: int
    seed: Optional[int]
    bound: int
    violations: int
    worst_ratio: float = Field(description="例外集以外 ||v||/lambda 的最小值，应 >= 2")
    per_sample: List[ScanSampleReport]


class HeightBoundReport(BaseModel):
    command: str = "height-bound"
    r: int
    s: int
    regulator: float
    gamma: int
    epsilon: float
    bound: float
    rho_bound: float = Field(description="由调节子得到的 rho_inf 闭式上界")
    log_tk_bound: float = Field(description="log t_K 的闭式上界")
    log_tk_bound_epsilon: float = Field(description="给定 epsilon 的未优化上界")
    optimal_epsilon: float
    field: Optional[str] = None
    min_pisot_height: Optional[float] = None
    min_pisot_unit: Optional[UnitReport] = None
    bound_holds: Optional[bool] = Field(default=None, description="仅记录比较结果，不作断言")


class SumsRow(BaseModel):
    n: int
    alternating_sum: str = Field(description="精确有理数 p/q")
    factorial_ratio: str = Field(description="A(n)/(n-1)!")
    ratio: Optional[float] = Field(default=None, description="相对于渐近包络的比值，n >= 2")
    below_limit: Optional[bool] = None


class SumsReport(BaseModel):
    command: str = "sums"
    n_max: int
    limit: float = Field(description="sqrt(e)/(2 pi)")
    rows: List[SumsRow]


class SchemaReport(BaseModel):
    command: str = "schema"
    schemas: Dict[str, dict]


COMMAND_SCHEMAS: Dict[str, Type[BaseModel]] = {
    "gen-quadratic": GenFieldReport,
    "gen-cyclotomic": GenFieldReport,
    "pisot": PisotReport,
    "reduce": ReduceReport,
    "verify": VerifyReport,
    "facet-bound": FacetBoundReport,
    "enumerate-facets": EnumerateFacetsReport,
    "lemma6": ShortVectorScanReport,
    "height-bound": HeightBoundReport,
    "sums": SumsReport,
    "schema": SchemaReport,
    "error": ErrorReport,
}


def schema_document() -> Dict[str, dict]:
    return {name: model.model_json_schema() for name, model in COMMAND_SCHEMAS.items()}
