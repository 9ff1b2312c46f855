"""
运行记录：每次 CLI 调用追加一行 JSON
"""
import json
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)

MAX_SUMMARY_LENGTH = 1000


class RunLedger:
    """运行记录器"""

    def __init__(self, config: dict):
        ledger_config = config.get("ledger", {}) or {}
        self.enabled = ledger_config.get("enabled", True)
        self.log_path = Path(ledger_config.get("log_path", "./logs/runs.jsonl"))
        if self.enabled:
            self.log_path.parent.mkdir(parents=True, exist_ok=True)

    def log(
        self,
        command: str,
        arguments: Dict[str, Any],
        success: bool = True,
        summary: Optional[str] = None,
    ):
        """
        记录一次运行

        Args:
            command: 子命令名
            arguments: 命令参数
            success: 是否成功
            summary: 结果摘要，过长时截断
        """
        if not self.enabled:
            return

        record = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "command": command,
            "arguments": {k: _jsonable(v) for k, v in arguments.items()},
            "success": success,
        }
        if summary:
            if len(summary) > MAX_SUMMARY_LENGTH:
                summary = summary[:MAX_SUMMARY_LENGTH] + "... (truncated)"
            record["summary"] = summary

        try:
            with open(self.log_path, "a", encoding="utf-8") as f:
                f.write(json.dumps(record, ensure_ascii=False) + "\n")
        except OSError as e:
            logger.error(f"写入运行记录失败: {e}")

        if success:
            logger.debug(f"RUN: {command} {arguments}")
        else:
            logger.warning(f"RUN: {command} {arguments} (FAILED)")

    def get_recent_runs(self, count: int = 50) -> List[dict]:
        """读取最近 count 条记录，跳过损坏的行"""
        if not self.log_path.exists():
            return []
        records = []
        try:
            with open(self.log_path, "r", encoding="utf-8") as f:
                for line in f.readlines()[-count:]:
                    try:
                        records.append(json.loads(line.strip()))
                    except json.JSONDecodeError:
                        continue
        except OSError as e:
            logger.error(f"读取运行记录失败: {e}")
        return records


def _jsonable(value: Any) -> Any:
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)
