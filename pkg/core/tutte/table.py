from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..algebra import AlphaSeries, rf_to_json, substitute
from ..config import ALPHA_SYMBOL, U_SYMBOL, LambdaMode, SeriesKind, z_name
from ..errors import ConfigError, NonGenericError, PrerequisiteError
from ..log import LOG_TAG, logger
from ..model import Model

Key = Tuple[SeriesKind, int, int]


def lowest_order(kind: SeriesKind, g: int, n: int) -> int:
    """最低非零阶：(0,1) 的 H、U 从 α̂^{-1} 开始，W_{0,1} 从 α̂^0 开始。"""
    if (g, n) == (0, 1):
        return 0 if kind == SeriesKind.W else -1
    return 2 * g - 2 + n


def place(f, args: Sequence, u=None):
    """把 z_1..z_k 同时换成 args，u 给出时一并代换。"""
    mapping = {z_name(i): value for i, value in enumerate(args, start=1)}
    if u is not None:
        mapping[U_SYMBOL] = u
    return substitute(f, mapping)


def splits(rest: Sequence[int]) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """把下标集 rest 拆成 J ⊔ J′ 的全部方式。"""
    for size in range(len(rest) + 1):
        for chosen in combinations(rest, size):
            others = tuple(i for i in rest if i not in chosen)
            yield chosen, others


class SeriesTable:
    """(种类, g, n) → 各阶系数；只能按阶次逐个写入。"""

    def __init__(self, model: Model, order: int):
        self.model = model
        self.order = order
        self._coeffs: Dict[Key, Dict[int, object]] = {}
        self._top: Dict[Key, int] = {}
        self._check_lambdas()

    def _check_lambdas(self) -> None:
        if self.model.lambda_mode != LambdaMode.VALUES:
            return
        values = [self.model.lambda_value(j) for j in range(1, self.model.N + 1)]
        for j, lam in enumerate(values, start=1):
            if not self.model.dV(lam, 2):
                raise NonGenericError(f"V″(λ_{j}) = 0")
        for i in range(len(values)):
            for j in range(i + 1, len(values)):
                if self.model.dV(values[i]) == self.model.dV(values[j]):
                    raise NonGenericError(f"V′(λ_{i + 1}) = V′(λ_{j + 1})")

    @property
    def space(self):
        return self.model.space

    def check_topology(self, g: int, n: int) -> None:
        if g < 0 or n < 1:
            raise ConfigError(f"拓扑 ({g},{n}) 无效")
        if n > self.model.n_max:
            raise ConfigError(f"n={n} 超过模型符号数 {self.model.n_max}")

    def top(self, kind: SeriesKind, g: int, n: int) -> int:
        """已写入的最高阶；尚未写入时为最低阶减一。"""
        return self._top.get((kind, g, n), lowest_order(kind, g, n) - 1)

    def has(self, kind: SeriesKind, g: int, n: int, delta: int) -> bool:
        return delta <= self.top(kind, g, n)

    def coefficient(self, kind: SeriesKind, g: int, n: int, delta: int):
        if delta < lowest_order(kind, g, n):
            return self.space.zero
        if delta > self.top(kind, g, n):
            raise PrerequisiteError(f"{kind.value}_{g},{n} 的 α̂^{delta} 阶尚未计算")
        return self._coeffs[(kind, g, n)].get(delta, self.space.zero)

    def at(self, kind: SeriesKind, g: int, n: int, delta: int, args: Sequence, u=None):
        """按位置取变量的系数，例如 H_{g,n}(u; λ_j, I)。"""
        value = self.coefficient(kind, g, n, delta)
        if not value:
            return value
        return place(value, args, u)

    def store(self, kind: SeriesKind, g: int, n: int, delta: int, value) -> bool:
        """写入下一阶；超出截断阶时丢弃并返回 False。"""
        key = (kind, g, n)
        expected = self.top(kind, g, n) + 1
        if delta != expected:
            raise PrerequisiteError(f"{kind.value}_{g},{n} 应写入 α̂^{expected} 阶，收到 α̂^{delta}")
        if delta > self.order:
            return False
        self._coeffs.setdefault(key, {})[delta] = value
        self._top[key] = delta
        logger.debug(f"{LOG_TAG} {kind.value}_{g},{n} α̂^{delta} 已写入")
        return True

    def complete(self, kind: SeriesKind, g: int, n: int) -> bool:
        return self.top(kind, g, n) >= self.order

    def series(self, kind: SeriesKind, g: int, n: int) -> AlphaSeries:
        top = self.top(kind, g, n)
        terms = self._coeffs.get((kind, g, n), {})
        return AlphaSeries.from_terms(terms, prec=top + 1, zero=self.space.zero, var=ALPHA_SYMBOL)

    def keys(self) -> List[Key]:
        return sorted(self._top, key=lambda k: (2 * k[1] + k[2], k[1], k[0].value))

    def to_records(self, kinds: Optional[Sequence[SeriesKind]] = None) -> List[Dict]:
        """每个 (种类, g, n, δ) 一条 JSON 记录，顺序固定。"""
        records = []
        for kind, g, n in self.keys():
            if kinds is not None and kind not in kinds:
                continue
            for delta, value in sorted(self._coeffs[(kind, g, n)].items()):
                records.append({"kind": kind.value, "g": g, "n": n, "delta": delta, "value": rf_to_json(value)})
        return records
