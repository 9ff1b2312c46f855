"""
域目录：从 config.yaml 读取内置域列表，按名称或路径解析为 FieldData
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Union

import yaml

from core_field import FieldData

from .files import load_field_file

logger = logging.getLogger(__name__)

ROOT = Path(__file__).resolve().parent.parent
DEFAULT_CONFIG = ROOT / "config.yaml"


def load_config(config_path: Union[str, Path, None] = None) -> dict:
    """加载配置；文件不存在时返回空配置"""
    path = Path(config_path) if config_path else DEFAULT_CONFIG
    if not path.exists():
        logger.warning(f"配置文件不存在: {path}")
        return {}
    with open(path, "r", encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


@dataclass
class FieldEntry:
    """目录中的一个域"""
    name: str
    display_name: str
    path: Path
    description: str = ""

    def __str__(self):
        return f"{self.display_name} ({self.name}) - {self.path.name}"


class FieldManager:
    """内置域管理器"""

    def __init__(self, config: Optional[dict] = None, base_dir: Union[str, Path, None] = None):
        self.config = config if config is not None else load_config()
        self.base_dir = Path(base_dir) if base_dir else ROOT
        self.entries: Dict[str, FieldEntry] = {}
        self._cache: Dict[str, FieldData] = {}
        self._load_catalog()
        self.default = self.config.get("fields", {}).get("default")

    def _load_catalog(self):
        for item in self.config.get("fields", {}).get("catalog", []) or []:
            path = Path(item["path"])
            if not path.is_absolute():
                path = self.base_dir / path
            entry = FieldEntry(
                name=item["name"],
                display_name=item.get("display_name", item["name"]),
                path=path,
                description=item.get("description", ""),
            )
            self.entries[entry.name] = entry
            logger.debug(f"登记域: {entry}")

    def list_fields(self) -> List[FieldEntry]:
        return list(self.entries.values())

    def get_entry(self, name: str) -> Optional[FieldEntry]:
        return self.entries.get(name)

    def resolve(self, name_or_path: Optional[str] = None) -> FieldData:
        """
        按目录名称或文件路径加载域；参数为空时使用默认域

        Raises:
            FileNotFoundError: 名称不在目录中且不是已存在的文件
            FieldValidationError: 域文件不合法
        """
        key = name_or_path or self.default
        if not key:
            raise FileNotFoundError("未指定域，且配置中没有默认域")
        if key in self._cache:
            return self._cache[key]

        entry = self.entries.get(key)
        path = entry.path if entry else Path(key)
        if not path.exists():
            raise FileNotFoundError(f"'{key}' 既不是目录中的域，也不是存在的文件")
        field_data = load_field_file(path)
        self._cache[key] = field_data
        return field_data
