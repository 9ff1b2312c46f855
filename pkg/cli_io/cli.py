"""
命令行入口

每个子命令向标准输出写一个 JSON 对象（结构见 schemas.py），日志走标准错误。
领域错误与参数校验错误统一输出 {"error", "invariant"} 并以退出码 2 结束。
"""
import argparse
import json
import logging
import math
import os
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ValidationError

from bounds import (
    ENVELOPE_LIMIT,
    FRIEDMAN_BOUND,
    FacetBoundInput,
    alternating_sum,
    alternating_sum_ratio,
    facet_bound,
    factorial_ratio,
    gamma_for_signature,
    log_tk_bound,
    log_tk_bound_epsilon,
    optimal_epsilon,
    pisot_height_bound,
)
from core_field import FieldData, FieldValidationError, TotallyPositiveElement, is_pisot
from cubic_special import scan_random_bases
from reduction import enumerate_facet_candidates, reduce_unary, verify_theorem4
from unit_lattice import (
    PisotSearchError,
    UnitExponentVector,
    build_lattice,
    covering_radius_bound_value,
    min_pisot_height,
    pisot_search,
    regulator,
)

from .cyclotomic import gen_cyclotomic_field_file, gen_real_cyclotomic_field_file
from .files import FieldFile, gen_quadratic_field_file, write_field_file
from .ledger import RunLedger
from .manager import FieldManager, load_config
from .pell import pell_fundamental_unit
from .schemas import (
    COMMAND_SCHEMAS,
    EnumerateFacetsReport,
    ErrorReport,
    FacetBoundReport,
    GenFieldReport,
    HeightBoundReport,
    LatticePointReport,
    PisotReport,
    ReduceReport,
    ScanSampleReport,
    SchemaReport,
    ShortVectorScanReport,
    SumsReport,
    SumsRow,
    UnitReport,
    VerifyReport,
    schema_document,
)

logger = logging.getLogger(__name__)

PRECISION_ENV = "PISOT_OUTPUT_PRECISION"
EXIT_OK = 0
EXIT_INVALID = 2


class CommandContext:
    """一次调用共享的配置与域目录"""

    def __init__(self, config: dict):
        self.config = config
        self.numerics = config.get("numerics", {}) or {}
        self.fields = FieldManager(config)

    @property
    def grid_resolution(self) -> float:
        return float(self.numerics.get("grid_resolution", 1e-3))

    @property
    def retry_cap(self) -> int:
        return int(self.numerics.get("pisot_retry_cap", 8))

    @property
    def max_rank(self) -> int:
        return int(self.numerics.get("max_enumeration_rank", 6))

    def field(self, name_or_path: Optional[str]) -> FieldData:
        return self.fields.resolve(name_or_path)

    def search(self, field_data: FieldData, lattice, epsilon: float):
        return pisot_search(
            field_data,
            lattice,
            epsilon,
            grid_resolution=self.grid_resolution,
            retry_cap=self.retry_cap,
            max_rank=self.max_rank,
        )


def _parse_reals(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ValueError(f"无法解析实数列表: {text}")


def _parse_ints(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ValueError(f"无法解析整数列表: {text}")


def _unit_report(unit: UnitExponentVector) -> UnitReport:
    return UnitReport(exponents=list(unit.exponents), torsion_index=unit.torsion_index)


def _complex_pairs(values: np.ndarray) -> List[List[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=complex)]


# ==================== 子命令 ====================

def cmd_gen_quadratic(ctx: CommandContext, args) -> BaseModel:
    field_file = gen_quadratic_field_file(args.d, args.digits)
    return _gen_report("gen-quadratic", field_file, args.out, unit=str(pell_fundamental_unit(args.d)))


def cmd_gen_cyclotomic(ctx: CommandContext, args) -> BaseModel:
    if args.kind == "zeta5":
        field_file = gen_cyclotomic_field_file(5, args.digits)
    else:
        field_file = gen_real_cyclotomic_field_file(7, args.digits)
    return _gen_report("gen-cyclotomic", field_file, args.out)


def _gen_report(command: str, field_file: FieldFile, out: str, unit: Optional[str] = None) -> GenFieldReport:
    field_data = field_file.to_field_data()
    path = write_field_file(field_file, out)
    return GenFieldReport(
        command=command,
        path=str(path),
        name=field_data.name,
        degree=field_data.n,
        regulator=regulator(build_lattice(field_data)).standard,
        unit=unit,
    )


def cmd_pisot(ctx: CommandContext, args) -> BaseModel:
    field_data = ctx.field(args.field)
    lattice = build_lattice(field_data)
    found = ctx.search(field_data, lattice, args.epsilon)
    return PisotReport(
        field=field_data.name,
        epsilon=found.epsilon,
        unit=_unit_report(found.unit),
        embeddings=_complex_pairs(found.embeddings),
        log_vector=found.log_vector.tolist(),
        is_pisot=is_pisot(field_data.project(found.embeddings)),
        rho=found.rho,
        rho_source=found.rho_source,
        window_low=found.window_low,
        window_high=found.window_high,
        window_holds=found.window_holds,
        attempts=found.attempts,
    )


def _element(field_data: FieldData, text: str) -> TotallyPositiveElement:
    return TotallyPositiveElement(field_data.signature, np.array(_parse_reals(text)))


def cmd_reduce(ctx: CommandContext, args) -> BaseModel:
    field_data = ctx.field(args.field)
    lattice = build_lattice(field_data)
    a = _element(field_data, args.a)
    if args.unit_exponents:
        unit = UnitExponentVector(_parse_ints(args.unit_exponents), 0)
        if unit.rank != lattice.rank:
            raise ValueError(f"单位指数个数 {unit.rank} 与单位秩 {lattice.rank} 不符")
    else:
        unit = ctx.search(field_data, lattice, args.epsilon).unit
    cert = reduce_unary(field_data, a, unit, args.delta, lattice)
    return ReduceReport(
        field=field_data.name,
        delta=cert.delta,
        unit=_unit_report(cert.unit),
        applied=_unit_report(cert.applied),
        reduced_element=cert.reduced_element.coords.tolist(),
        rounds=cert.rounds,
        round_bound=cert.round_bound,
        trace_initial=cert.trace_initial,
        trace_final=cert.trace_final,
        t_delta=cert.t_delta,
        trace_history=list(cert.trace_history),
    )


def cmd_verify(ctx: CommandContext, args) -> BaseModel:
    field_data = ctx.field(args.field)
    lattice = build_lattice(field_data)
    a = _element(field_data, args.a)
    unit = ctx.search(field_data, lattice, args.epsilon).unit
    report = verify_theorem4(field_data, a, unit, args.delta, lattice)
    return VerifyReport(
        field=field_data.name,
        delta=args.delta,
        passed=report.passed,
        trace_final=report.certificate.trace_final,
        mu=report.minimum.mu,
        argmin=list(report.minimum.argmin.coeffs),
        trace_xx=report.minimum.trace_xx,
        t_delta_squared=report.t_delta_squared,
        min_nontorsion_trace=report.min_nontorsion_trace,
        factor=report.factor,
        trace_bound=report.trace_bound,
        trace_ok=report.trace_ok,
        argmin_ok=report.argmin_ok,
        coordinate_floor=report.coordinate_floor,
        coordinate_ok=report.coordinate_ok,
        rounds=report.certificate.rounds,
        weighted_factor=report.weighted_factor,
        weighted_trace_ok=report.weighted_trace_ok,
        weighted_argmin_ok=report.weighted_argmin_ok,
        weighted_coordinate_ok=report.weighted_coordinate_ok,
    )


def cmd_facet_bound(ctx: CommandContext, args) -> BaseModel:
    result = facet_bound(FacetBoundInput(args.r, args.s, args.regulator), args.abstract_exponent)
    return FacetBoundReport(
        r=result.r,
        s=result.s,
        regulator=result.regulator,
        delta=result.delta,
        term_geometric=result.term_geometric,
        term_covering=result.term_covering,
        term_log=result.term_log,
        bracket=result.bracket,
        alternating_sum=result.alternating_sum,
        bound=result.bound,
        abstract_exponent=result.abstract_exponent,
        below_friedman=result.regulator < FRIEDMAN_BOUND,
    )


def cmd_enumerate_facets(ctx: CommandContext, args) -> BaseModel:
    field_data = ctx.field(args.field)
    lattice = build_lattice(field_data)
    unit = ctx.search(field_data, lattice, args.epsilon).unit
    report = enumerate_facet_candidates(field_data, lattice, unit)
    return EnumerateFacetsReport(
        field=field_data.name,
        unit=_unit_report(report.unit),
        t_k=report.t_k,
        radius=report.radius,
        candidates=[
            LatticePointReport(exponents=list(p.exponents), log_vector=p.point.tolist())
            for p in report.points
        ],
        half_counted=report.half_counted,
        with_signs=report.with_signs,
        cube_points=report.cube_points,
        slice_volume=report.slice_volume,
        blichfeldt=report.blichfeldt,
        blichfeldt_ok=report.blichfeldt_ok,
        regulator=report.facet.regulator,
        facet_bound=report.facet.bound,
        within_facet_bound=report.within_facet_bound,
    )


def cmd_lemma6(ctx: CommandContext, args) -> BaseModel:
    summary = scan_random_bases(args.samples, args.seed, args.bound)
    return ShortVectorScanReport(
        samples=summary.samples,
        seed=summary.seed,
        bound=summary.search_bound,
        violations=summary.violations,
        worst_ratio=summary.worst_ratio,
        per_sample=[
            ScanSampleReport(lambda_inf=s.lambda_inf, min_ratio=s.min_ratio, violations=s.violations)
            for s in summary.per_sample
        ],
    )


def cmd_height_bound(ctx: CommandContext, args) -> BaseModel:
    gamma = args.gamma if args.gamma is not None else gamma_for_signature(args.r, args.s)
    bound = pisot_height_bound(args.r, args.s, args.regulator, gamma, args.epsilon)
    m = args.r + args.s
    rho = covering_radius_bound_value(m - 1, args.regulator * math.sqrt(m))
    extra: Dict[str, Any] = {}
    if args.field:
        field_data = ctx.field(args.field)
        if (field_data.signature.r, field_data.signature.s) != (args.r, args.s):
            raise ValueError(f"域 {field_data.name} 的符号 {field_data.signature} 与 r, s 参数不符")
        found = min_pisot_height(
            field_data,
            build_lattice(field_data),
            args.epsilon,
            ctx.grid_resolution,
            ctx.max_rank,
        )
        extra = dict(
            field=field_data.name,
            min_pisot_height=found.height,
            min_pisot_unit=_unit_report(found.unit),
            bound_holds=found.height <= bound,
        )
        if found.height > bound:
            logger.warning(f"{field_data.name}: 最小 Pisot 高度 {found.height:.6f} 超过公式值 {bound:.6f}")
    return HeightBoundReport(
        r=args.r,
        s=args.s,
        regulator=args.regulator,
        gamma=gamma,
        epsilon=args.epsilon,
        bound=bound,
        rho_bound=rho,
        log_tk_bound=log_tk_bound(args.r, args.s, rho),
        log_tk_bound_epsilon=log_tk_bound_epsilon(args.r, args.s, rho, args.epsilon),
        optimal_epsilon=optimal_epsilon(args.r, args.s),
        **extra,
    )


def cmd_sums(ctx: CommandContext, args) -> BaseModel:
    if args.n_max < 1:
        raise ValueError(f"n-max 必须 >= 1，当前 {args.n_max}")
    rows = []
    for n in range(1, args.n_max + 1):
        ratio = alternating_sum_ratio(n) if n >= 2 else None
        rows.append(SumsRow(
            n=n,
            alternating_sum=str(alternating_sum(n)),
            factorial_ratio=str(factorial_ratio(n)),
            ratio=ratio,
            below_limit=None if ratio is None else ratio <= ENVELOPE_LIMIT,
        ))
    return SumsReport(n_max=args.n_max, limit=ENVELOPE_LIMIT, rows=rows)


def cmd_schema(ctx: CommandContext, args) -> BaseModel:
    return SchemaReport(schemas=schema_document())


COMMANDS: Dict[str, Callable[[CommandContext, argparse.Namespace], BaseModel]] = {
    "gen-quadratic": cmd_gen_quadratic,
    "gen-cyclotomic": cmd_gen_cyclotomic,
    "pisot": cmd_pisot,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
    "facet-bound": cmd_facet_bound,
    "enumerate-facets": cmd_enumerate_facets,
    "lemma6": cmd_lemma6,
    "height-bound": cmd_height_bound,
    "sums": cmd_sums,
    "schema": cmd_schema,
}


# ==================== 参数与输出 ====================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Pisot 单位约化与上界计算")
    parser.add_argument("--config", default=None, help="配置文件路径（默认仓库根目录 config.yaml）")
    parser.add_argument("--verbose", action="store_true", help="输出 DEBUG 日志")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-quadratic", help="生成实二次域文件")
    p.add_argument("--d", type=int, required=True, help="无平方因子整数 d")
    p.add_argument("--out", required=True, help="输出路径")
    p.add_argument("--digits", type=int, default=30, help="有效位数")

    p = sub.add_parser("gen-cyclotomic", help="生成分圆域文件")
    p.add_argument("--kind", choices=["zeta5", "zeta7plus"], required=True)
    p.add_argument("--out", required=True, help="输出路径")
    p.add_argument("--digits", type=int, default=30, help="有效位数")

    def field_args(p, with_epsilon: bool = True):
        p.add_argument("--field", default=None, help="目录中的域名称或域文件路径")
        if with_epsilon:
            p.add_argument("--epsilon", type=float, default=0.01, help="Pisot 搜索的 epsilon")

    p = sub.add_parser("pisot", help="搜索 Pisot 单位")
    field_args(p)

    p = sub.add_parser("reduce", help="约化一元迹型")
    field_args(p)
    p.add_argument("--a", required=True, help="逗号分隔的 r+s 个正实数")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--unit-exponents", default=None, help="逗号分隔的单位指数，缺省时搜索 Pisot 单位")

    p = sub.add_parser("verify", help="约化并检查质量不等式")
    field_args(p)
    p.add_argument("--a", required=True, help="逗号分隔的 r+s 个正实数")
    p.add_argument("--delta", type=float, required=True)

    p = sub.add_parser("facet-bound", help="约化域面数上界")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--regulator", type=float, required=True)
    p.add_argument("--abstract-exponent", action="store_true", help="使用 m^{1+1/(2k)}")

    p = sub.add_parser("enumerate-facets", help="枚举面候选单位")
    field_args(p)

    p = sub.add_parser("lemma6", help="随机秩 2 约化基的例外集扫描")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--bound", type=int, default=10, help="系数搜索范围 |x|, |y| <= bound")

    p = sub.add_parser("height-bound", help="Pisot 单位高度上界")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--regulator", type=float, required=True)
    p.add_argument("--gamma", type=int, choices=[1, 2], default=None, help="缺省时按符号确定")
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--field", default=None, help="同时计算该域的实际最小 Pisot 高度")

    p = sub.add_parser("sums", help="精确交错和与渐近包络")
    p.add_argument("--n-max", type=int, required=True)

    sub.add_parser("schema", help="输出全部命令的 JSON Schema")
    return parser


def output_precision() -> Optional[int]:
    raw = os.getenv(PRECISION_ENV)
    if not raw:
        return None
    try:
        digits = int(raw)
    except ValueError:
        logger.warning(f"{PRECISION_ENV}={raw} 不是整数，忽略")
        return None
    return digits if digits > 0 else None


def round_floats(value: Any, digits: Optional[int]) -> Any:
    if digits is None:
        return value
    if isinstance(value, float):
        return float(f"{value:.{digits}g}") if math.isfinite(value) else value
    if isinstance(value, list):
        return [round_floats(v, digits) for v in value]
    if isinstance(value, dict):
        return {k: round_floats(v, digits) for k, v in value.items()}
    return value


def render(report: BaseModel, command: str) -> str:
    """按命令对应的模型再校验一次后序列化"""
    model = COMMAND_SCHEMAS[command]
    payload = model.model_validate(report.model_dump()).model_dump(mode="json")
    return json.dumps(round_floats(payload, output_precision()), ensure_ascii=False)


DOMAIN_ERRORS = (
    FieldValidationError,
    PisotSearchError,
    ValidationError,
    ValueError,
    ArithmeticError,
    FileNotFoundError,
)


def _error_invariant(e: Exception) -> str:
    invariant = getattr(e, "invariant", None)
    return invariant if invariant else type(e).__name__


def main(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    config = load_config(args.config)
    ledger = RunLedger(config)
    arguments = {k: v for k, v in vars(args).items() if k not in ("command", "verbose", "config")}

    try:
        ctx = CommandContext(config)
        report = COMMANDS[args.command](ctx, args)
        text = render(report, args.command)
    except DOMAIN_ERRORS as e:
        message = str(e)
        if isinstance(e, PisotSearchError):
            message = f"{message}; diagnostics={json.dumps(e.diagnostics, ensure_ascii=False, default=str)}"
        logger.error(f"{args.command} 失败: {message}")
        error = ErrorReport(error=message, invariant=_error_invariant(e))
        print(error.model_dump_json(), file=stdout)
        ledger.log(args.command, arguments, success=False, summary=message)
        return EXIT_INVALID

    print(text, file=stdout)
    ledger.log(args.command, arguments, success=True, summary=text)
    return EXIT_OK
