import csv
import io
import json
from pathlib import Path
from typing import Dict, List, Optional

import aiofiles

from ..config import SCHEMA_VERSION, Command, OutputFormat
from ..job import JobConfig
from ..log import LOG_TAG, logger

CSV_HEADERS = {
    Command.ENUMERATE: ["g", "n", "delta", "count"],
    Command.TUTTE: ["kind", "g", "n", "delta", "value"],
    Command.CURVE: ["series", "delta", "value"],
    Command.TOPREC: ["g", "n", "value"],
    Command.INTERSECT: ["g", "n", "insertions", "value"],
    Command.CROSSCHECK: ["g", "n", "delta", "label", "verdict", "detail"],
}


def render_json(config: JobConfig, results: List[Dict], failures: int = 0) -> str:
    payload = {
        "schema": SCHEMA_VERSION,
        "command": config.command.value,
        "config": config.to_dict(),
        "digest": config.digest(),
        "results": [{"g": item["g"], "n": item["n"], "records": item["records"]} for item in results],
    }
    if config.command in (Command.CROSSCHECK, Command.CURVE):
        payload["failures"] = failures
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_csv(config: JobConfig, results: List[Dict]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["schema", SCHEMA_VERSION])
    writer.writerow(CSV_HEADERS[config.command])
    for item in results:
        writer.writerows(item["rows"])
    return buffer.getvalue()


class TaskDeliveryMixin:
    """结果文件：同一配置总是写出逐字节相同的内容。"""

    def output_path(self, config: JobConfig) -> Path:
        if config.out:
            return Path(config.out)
        return Path(config.data_dir) / f"{config.command.value}-{config.digest()}.{config.format.value}"

    def render(self, config: JobConfig, results: List[Dict], failures: int = 0) -> str:
        if config.format == OutputFormat.CSV:
            return render_csv(config, results)
        return render_json(config, results, failures)

    async def write_artifact(self, config: JobConfig, results: List[Dict], failures: int = 0, path: Optional[Path] = None) -> Path:
        path = Path(path) if path is not None else self.output_path(config)
        path.parent.mkdir(parents=True, exist_ok=True)
        text = self.render(config, results, failures)
        async with aiofiles.open(path, "w", encoding="utf-8", newline="") as f:
            await f.write(text)
        logger.info(f"{LOG_TAG} 结果已写入 {path}")
        return path
