"""
域文件读写、二次域与分圆域生成、域目录、运行记录与命令行
"""
from .cyclotomic import gen_cyclotomic_field_file, gen_real_cyclotomic_field_file
from .errors import PellError
from .files import (
    FieldFile,
    dump_field_file,
    gen_quadratic_field_file,
    load_field_file,
    parse_field_file,
    write_field_file,
)
from .ledger import RunLedger
from .manager import FieldEntry, FieldManager, load_config
from .pell import PellResult, is_squarefree, pell_fundamental_unit
from .schemas import COMMAND_SCHEMAS, schema_document

__all__ = [
    "COMMAND_SCHEMAS",
    "FieldEntry",
    "FieldFile",
    "FieldManager",
    "PellError",
    "PellResult",
    "RunLedger",
    "dump_field_file",
    "gen_cyclotomic_field_file",
    "gen_quadratic_field_file",
    "gen_real_cyclotomic_field_file",
    "is_squarefree",
    "load_config",
    "load_field_file",
    "parse_field_file",
    "pell_fundamental_unit",
    "schema_document",
    "write_field_file",
]
