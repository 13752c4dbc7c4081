"""一次任务的配置：默认值来自 _conf_schema.json，可被任务文件与命令行参数逐层覆盖。"""
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple

from .args import (
    format_topologies,
    is_infinity,
    parse_bool,
    parse_int,
    parse_rationals,
    parse_topologies,
    split_list,
)
from .config import DEFAULT_MAX_MAPS, DEFAULT_ORDER, Command, Family, LambdaMode, OutputFormat
from .errors import ConfigError
from .model import Model, build_model, monomial_potential

SCHEMA_PATH = Path(__file__).resolve().parents[1] / "_conf_schema.json"

BASES = ("raw", "phi")
TOWERS = ("auto", "rational")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def load_schema(path: Path = SCHEMA_PATH) -> Dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def schema_defaults(schema: Optional[Mapping] = None) -> Dict[str, str]:
    """把分节的 schema 摊平成 key → 默认值文本。"""
    schema = schema if schema is not None else load_schema()
    defaults: Dict[str, str] = {}
    for section in schema.values():
        for key, item in section.get("items", {}).items():
            value = item.get("default", "")
            if isinstance(value, bool):
                value = "true" if value else "false"
            defaults[key] = str(value)
    return defaults


def _enum(enum_cls, key: str, value: str):
    try:
        return enum_cls(str(value).strip())
    except ValueError as e:
        choices = ", ".join(item.value for item in enum_cls)
        raise ConfigError(f"{key} 只能取 {choices}，实际为 {value!r}") from e


def _choice(key: str, value: str, choices) -> str:
    text = str(value).strip()
    if text not in choices:
        raise ConfigError(f"{key} 只能取 {', '.join(choices)}，实际为 {value!r}")
    return text


@dataclass
class JobConfig:
    command: Command
    r: int
    potential: List[str] = field(default_factory=list)
    lambda_mode: LambdaMode = LambdaMode.INFINITY
    lambdas: List[str] = field(default_factory=list)
    N: int = 0
    targets: List[Tuple[int, int]] = field(default_factory=list)
    order: int = DEFAULT_ORDER
    family: Family = Family.CILIATED
    ks: List[int] = field(default_factory=list)
    basis: str = "raw"
    tower: str = "auto"
    out: str = ""
    format: OutputFormat = OutputFormat.JSON
    log_level: str = "INFO"
    data_dir: str = ".kontsevich"
    max_maps: int = DEFAULT_MAX_MAPS

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.r < 2:
            raise ConfigError(f"r 必须至少为 2，实际为 {self.r}")
        if self.order < 0:
            raise ConfigError(f"截断阶 order 不能为负：{self.order}")
        if self.potential:
            if len(self.potential) != self.r + 1:
                raise ConfigError(f"位势需要 {self.r + 1} 个系数 v_1..v_{self.r + 1}，实际为 {len(self.potential)}")
            if self.potential[-1] == "0":
                raise ConfigError("v_{r+1} 不能为零")
        if self.N < 0:
            raise ConfigError(f"N 不能为负：{self.N}")
        if self.lambda_mode == LambdaMode.VALUES and not self.lambdas:
            raise ConfigError("给定 λ 取值模式却没有 λ")
        if not self.targets:
            raise ConfigError("至少需要一个拓扑 gn")
        if self.family == Family.MULTI and self.command == Command.ENUMERATE:
            if any(len(self.ks) != n for _, n in self.targets):
                raise ConfigError(f"多纤毛图的度数向量 {self.ks} 与拓扑 {format_topologies(self.targets)} 不符")
        if self.max_maps <= 0:
            raise ConfigError(f"max_maps 必须为正：{self.max_maps}")

    @classmethod
    def from_mapping(cls, values: Mapping[str, str], defaults: Optional[Mapping[str, str]] = None) -> "JobConfig":
        """defaults 之上叠加 values；λ 三种写法互斥，lambda = infinity 与 lambda_infinity 等价。"""
        defaults = defaults if defaults is not None else schema_defaults()
        unknown = sorted(set(values) - set(defaults))
        merged = dict(defaults)
        merged.update({k: v for k, v in values.items() if v is not None})
        if unknown:
            raise ConfigError(f"未知配置项：{', '.join(unknown)}")

        r = parse_int("r", merged.get("r", "2"))
        lambda_text = merged.get("lambda", "")
        infinity = parse_bool("lambda_infinity", merged.get("lambda_infinity", "false"))
        N = parse_int("N", merged.get("N", "0") or "0")
        if lambda_text and is_infinity(lambda_text):
            infinity, lambda_text = True, ""
        if lambda_text and (infinity or N):
            raise ConfigError("lambda、lambda_infinity 与 N 只能给出一种")
        if infinity and N:
            raise ConfigError("lambda_infinity 与 N 只能给出一种")
        lambdas = parse_rationals(lambda_text)
        if lambdas:
            mode = LambdaMode.VALUES
        elif N:
            mode = LambdaMode.SYMBOLIC
        else:
            mode = LambdaMode.INFINITY

        return cls(
            command=_enum(Command, "command", merged.get("command", "")),
            r=r,
            potential=parse_rationals(merged.get("potential", "")),
            lambda_mode=mode,
            lambdas=lambdas,
            N=N,
            targets=parse_topologies(merged.get("gn", "")),
            order=parse_int("order", merged.get("order", DEFAULT_ORDER)),
            family=_enum(Family, "family", merged.get("family", Family.CILIATED.value)),
            ks=[parse_int("ks", k) for k in split_list(merged.get("ks", ""))],
            basis=_choice("basis", merged.get("basis", "raw"), BASES),
            tower=_choice("tower", merged.get("tower", "auto"), TOWERS),
            out=str(merged.get("out", "")).strip(),
            format=_enum(OutputFormat, "format", merged.get("format", OutputFormat.JSON.value)),
            log_level=_choice("log_level", str(merged.get("log_level", "INFO")).upper(), LOG_LEVELS),
            data_dir=str(merged.get("data_dir", ".kontsevich")).strip() or ".kontsevich",
            max_maps=parse_int("max_maps", merged.get("max_maps", DEFAULT_MAX_MAPS)),
        )

    def to_mapping(self) -> Dict[str, str]:
        return {
            "command": self.command.value,
            "r": str(self.r),
            "potential": ",".join(self.potential),
            "lambda": ",".join(self.lambdas),
            "lambda_infinity": "true" if self.lambda_mode == LambdaMode.INFINITY else "false",
            "N": str(self.N),
            "gn": format_topologies(self.targets),
            "order": str(self.order),
            "family": self.family.value,
            "ks": ",".join(str(k) for k in self.ks),
            "basis": self.basis,
            "tower": self.tower,
            "out": self.out,
            "format": self.format.value,
            "log_level": self.log_level,
            "data_dir": self.data_dir,
            "max_maps": str(self.max_maps),
        }

    def to_text(self) -> str:
        """写回任务文件格式；from_mapping(parse_job_text(to_text())) 得到相同配置。"""
        return "".join(f"{key} = {value}\n" for key, value in self.to_mapping().items())

    def digest(self) -> str:
        """只看影响计算结果的键。"""
        mapping = self.to_mapping()
        for key in ("out", "log_level", "data_dir"):
            mapping.pop(key)
        text = json.dumps(mapping, sort_keys=True, ensure_ascii=False)
        return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]

    def to_dict(self) -> Dict[str, str]:
        return {key: value for key, value in sorted(self.to_mapping().items()) if key not in ("out", "data_dir")}

    def coefficients(self) -> List[str]:
        return self.potential or [str(c) for c in monomial_potential(self.r)]

    def build_model(self, n_max: int = 0, **kwargs) -> Model:
        n_max = max([n_max, 3] + [n for _, n in self.targets])
        if self.lambda_mode == LambdaMode.VALUES:
            return build_model(self.r, self.coefficients(), lambda_values=self.lambdas, n_max=n_max, **kwargs)
        if self.lambda_mode == LambdaMode.SYMBOLIC:
            return build_model(self.r, self.coefficients(), N=self.N, n_max=n_max, **kwargs)
        return build_model(self.r, self.coefficients(), lambda_mode=LambdaMode.INFINITY, n_max=n_max, **kwargs)
