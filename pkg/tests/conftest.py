"""
共享夹具：内置域、对数单位格与 Pisot 单位按会话缓存
"""
import math
from pathlib import Path

import numpy as np
import pytest
import yaml

from cli_io import FieldManager, load_config
from core_field import TotallyPositiveElement
from unit_lattice import build_lattice, pisot_search

ROOT = Path(__file__).resolve().parent.parent
FIELDS_DIR = ROOT / "fields"

SQRT2_UNIT = 1 + math.sqrt(2)
GOLDEN_RATIO = (1 + math.sqrt(5)) / 2


@pytest.fixture(scope="session")
def config():
    return load_config(ROOT / "config.yaml")


@pytest.fixture(scope="session")
def field_manager(config):
    return FieldManager(config)


@pytest.fixture(scope="session")
def fields(field_manager):
    return {entry.name: field_manager.resolve(entry.name) for entry in field_manager.list_fields()}


@pytest.fixture(scope="session")
def lattices(fields):
    return {name: build_lattice(field_data) for name, field_data in fields.items()}


@pytest.fixture(scope="session")
def pisot_units(fields, lattices):
    """epsilon = 0.01 时各域的 Pisot 单位"""
    return {name: pisot_search(fields[name], lattices[name], 0.01).unit for name in fields}


@pytest.fixture
def qsqrt2(fields):
    return fields["qsqrt2"]


@pytest.fixture
def zeta5(fields):
    return fields["zeta5"]


@pytest.fixture
def zeta7plus(fields):
    return fields["zeta7plus"]


def element(field_data, coords):
    return TotallyPositiveElement(field_data.signature, np.asarray(coords, dtype=float))


def random_element(field_data, rng, spread=4.0):
    """坐标为 exp(U(-spread, spread)) 的随机全正元素"""
    return element(field_data, np.exp(rng.uniform(-spread, spread, size=field_data.signature.dim)))


@pytest.fixture
def cli_config(tmp_path, config):
    """运行记录写到临时目录的配置文件"""
    data = dict(config)
    data["ledger"] = {"enabled": True, "log_path": str(tmp_path / "runs.jsonl")}
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump(data, allow_unicode=True), encoding="utf-8")
    return path
