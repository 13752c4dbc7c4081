from typing import Dict, List, Tuple

from .algebra import format_scalar, to_scalar
from .errors import ConfigError

INFINITY_WORDS = {"inf", "infinity", "∞"}


def parse_job_text(text: str) -> Dict[str, str]:
    """扁平 key = value 格式；# 开头为注释，空行忽略，后出现的键覆盖前面的。"""
    values: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"第 {lineno} 行缺少 '='：{raw}")
        key, value = line.split("=", 1)
        key = key.strip()
        if not key:
            raise ConfigError(f"第 {lineno} 行键名为空")
        values[key] = value.strip()
    return values


def split_list(text) -> List[str]:
    if text is None:
        return []
    if isinstance(text, (list, tuple)):
        return [str(item).strip() for item in text if str(item).strip()]
    return [part.strip() for part in str(text).split(",") if part.strip()]


def parse_rationals(text) -> List[str]:
    """逗号分隔的有理数，统一成 p/q 文本。"""
    out = []
    for part in split_list(text):
        try:
            out.append(format_scalar(to_scalar(part)))
        except (ValueError, ZeroDivisionError) as e:
            raise ConfigError(f"无法解析有理数 {part!r}：{e}") from e
    return out


def parse_topologies(text) -> List[Tuple[int, int]]:
    """g:n[,g:n...]，去重后保持给出的顺序。"""
    out: List[Tuple[int, int]] = []
    for part in split_list(text):
        if ":" not in part:
            raise ConfigError(f"拓扑 {part!r} 应写成 g:n")
        g_text, n_text = part.split(":", 1)
        try:
            g, n = int(g_text), int(n_text)
        except ValueError as e:
            raise ConfigError(f"拓扑 {part!r} 不是整数对") from e
        if g < 0 or n < 1:
            raise ConfigError(f"拓扑 ({g},{n}) 不合法")
        if (g, n) not in out:
            out.append((g, n))
    return out


def format_topologies(topologies) -> str:
    return ",".join(f"{g}:{n}" for g, n in topologies)


def parse_int(key: str, value) -> int:
    try:
        return int(str(value).strip())
    except ValueError as e:
        raise ConfigError(f"{key} 需要整数，实际为 {value!r}") from e


def parse_bool(key: str, value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off", ""):
        return False
    raise ConfigError(f"{key} 需要布尔值，实际为 {value!r}")


def is_infinity(text) -> bool:
    return str(text).strip().lower() in INFINITY_WORDS
