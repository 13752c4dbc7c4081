import argparse
from pathlib import Path
from typing import Dict, List, Optional

from ..args import parse_job_text
from ..config import Command
from ..errors import ConfigError
from ..job import JobConfig, schema_defaults

# 命令行参数 → 配置键
FLAG_KEYS = {
    "r": "r",
    "potential": "potential",
    "lambda_values": "lambda",
    "N": "N",
    "gn": "gn",
    "order": "order",
    "family": "family",
    "ks": "ks",
    "basis": "basis",
    "tower": "tower",
    "out": "out",
    "format": "format",
    "log_level": "log_level",
    "data_dir": "data_dir",
    "max_maps": "max_maps",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kontsevich",
        description="广义 Kontsevich 图：枚举、Tutte 方程、谱曲线、拓扑递归与 r-spin 相交数",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for command in Command:
        p = sub.add_parser(command.value)
        p.add_argument("--config", help="key = value 格式的任务文件")
        p.add_argument("--r", help="V 的次数减一，至少为 2")
        p.add_argument("--potential", help="v1,...,v_{r+1}，有理数写成 p/q")
        group = p.add_mutually_exclusive_group()
        group.add_argument("--lambda", dest="lambda_values", help="λ 的有理数取值，逗号分隔")
        group.add_argument("--lambda-infinity", action="store_true", default=None, help="取 λ = ∞")
        group.add_argument("--N", help="符号 λ 的个数")
        p.add_argument("--gn", help="目标拓扑 g:n[,g:n...]")
        p.add_argument("--order", help="α̂ 的截断阶 D")
        p.add_argument("--out", help="结果文件路径")
        p.add_argument("--format", choices=["json", "csv"])
        p.add_argument("--family", choices=["F", "W", "U", "S"])
        p.add_argument("--ks", help="多纤毛图的度数向量")
        p.add_argument("--basis", choices=["raw", "phi"])
        p.add_argument("--tower", choices=["auto", "rational"])
        p.add_argument("--log-level", dest="log_level")
        p.add_argument("--data-dir", dest="data_dir")
        p.add_argument("--max-maps", dest="max_maps")
    return parser


def flag_values(namespace: argparse.Namespace) -> Dict[str, str]:
    """命令行上给出的值；给出任一 λ 写法时清掉文件里的另外两种。"""
    values: Dict[str, str] = {"command": namespace.command}
    for attr, key in FLAG_KEYS.items():
        value = getattr(namespace, attr, None)
        if value is not None:
            values[key] = str(value)
    lambda_flags = {
        "lambda": values.get("lambda"),
        "lambda_infinity": "true" if namespace.lambda_infinity else None,
        "N": values.get("N"),
    }
    if any(v is not None for v in lambda_flags.values()):
        values.update({"lambda": "", "lambda_infinity": "false", "N": "0"})
        values.update({k: v for k, v in lambda_flags.items() if v is not None})
    return values


def load_config(argv: Optional[List[str]] = None) -> JobConfig:
    """schema 默认值 < 任务文件 < 命令行参数。"""
    namespace = build_parser().parse_args(argv)
    defaults = schema_defaults()
    values: Dict[str, str] = {}
    if namespace.config:
        path = Path(namespace.config)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"无法读取任务文件 {path}: {e}") from e
        values.update(parse_job_text(text))
    values.update(flag_values(namespace))
    return JobConfig.from_mapping(values, defaults)
